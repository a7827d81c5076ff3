from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field


@dataclass(frozen=True)
class BettiTable:
    """Finely graded Betti numbers ``beta[(i, sigma)]``.

    Homological index ``i`` starts at 1 for the minimal generators, so
    ``ungraded[1]`` is the number of generators.
    """

    fine: dict = field(default_factory=dict)

    @classmethod
    def from_counts(cls, counts):
        return cls({k: v for k, v in sorted(counts.items()) if v})

    @property
    def coarse(self) -> dict[int, dict[int, int]]:
        out = defaultdict(lambda: defaultdict(int))
        for (i, sigma), v in self.fine.items():
            out[i][sum(sigma)] += v
        return {i: dict(sorted(row.items())) for i, row in sorted(out.items())}

    @property
    def ungraded(self) -> dict[int, int]:
        out = defaultdict(int)
        for (i, _), v in self.fine.items():
            out[i] += v
        return dict(sorted(out.items()))

    def betti_numbers(self) -> tuple[int, ...]:
        """``(beta_1, beta_2, ...)`` up to the last nonzero index."""
        u = self.ungraded
        if not u:
            return ()
        return tuple(u.get(i, 0) for i in range(1, max(u) + 1))

    def to_json(self):
        return {
            "betti_numbers": list(self.betti_numbers()),
            "graded": {str(i): {str(j): c for j, c in row.items()} for i, row in self.coarse.items()},
            "fine": [{"i": i, "sigma": list(s), "count": c} for (i, s), c in self.fine.items()],
        }

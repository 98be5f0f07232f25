"""Permutation-constraint formulas and grid hitting-set instances.

A permutation d-constraint is a tuple of d distinct indices in [n]; a
permutation satisfies it when the indices appear in that relative order.  A
formula is a conjunction of clauses, each a nonempty disjunction of
constraints.  A hitting-set instance asks for one cell per row of the k x k
grid hitting every given set; the sets are "thin": at most one cell per row.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class PermFormula:
    n: int
    clauses: tuple

    def __post_init__(self):
        object.__setattr__(self, "clauses",
                           tuple(tuple(tuple(c) for c in cl) for cl in self.clauses))
        for cl in self.clauses:
            if not cl:
                raise ValueError("empty clause")
            for c in cl:
                if len(set(c)) != len(c):
                    raise ValueError(f"constraint {c} repeats an index")
                if not all(1 <= i <= self.n for i in c):
                    raise ValueError(f"constraint {c} out of range 1..{self.n}")

    def is_structured(self) -> bool:
        """Every clause has length exactly 3 or 1 and no repeated index."""
        for cl in self.clauses:
            if len(cl) not in (1, 3):
                return False
            flat = [i for c in cl for i in c]
            if len(set(flat)) != len(flat):
                return False
        return True


@dataclass(frozen=True)
class HittingSetInstance:
    k: int
    sets: tuple = field(default=())

    def __post_init__(self):
        norm = tuple(tuple(sorted((int(r), int(c)) for r, c in f)) for f in self.sets)
        object.__setattr__(self, "sets", norm)
        for f in self.sets:
            rows = [r for r, _ in f]
            if len(set(rows)) != len(rows):
                raise ValueError(f"set {f} is not thin (repeats a row)")
            if not all(1 <= r <= self.k and 1 <= c <= self.k for r, c in f):
                raise ValueError(f"set {f} has a cell outside [{self.k}]x[{self.k}]")

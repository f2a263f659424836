"""Finite commutative unital quantales given by explicit tables.

Element ids are dense integers indexing ``elements``; serialized names are the
stable strings in ``elements``.  ``leq[a][b]`` means a ⊑ b, ``tensor[a][b]``
is the id of a⊗b and ``unit`` the id of the monoidal unit.  The join table is
derived from ``leq`` and verified, never taken on trust; residuation (the
internal hom) is likewise verified rather than assumed from distributivity.

Values are immutable after construction and safe for concurrent reads.
"""
from __future__ import annotations

import re

from .errors import MalformedQuantale, NotAMonoid
from .reporting import Certificate, LawReport, PASS


class Quantale:
    def __init__(self, elements, leq, tensor, unit, join=None):
        self.elements = tuple(elements)
        self.n = len(self.elements)
        self._leq = tuple(tuple(bool(v) for v in row) for row in leq)
        self._tensor = tuple(tuple(int(v) for v in row) for row in tensor)
        self.unit = int(unit)
        self._supplied_join = None if join is None else tuple(
            tuple(int(v) for v in row) for row in join
        )
        self._join = self._derive_joins()
        self.bottom = self._derive_bottom()
        self.report = self._audit()
        if self.report.ok:
            self.top = self._fold_join(range(self.n))
            self._hom = tuple(
                tuple(self._compute_hom(a, b) for b in range(self.n))
                for a in range(self.n)
            )
            self._meet = tuple(
                tuple(self._compute_meet(a, b) for b in range(self.n))
                for a in range(self.n)
            )

    # -- table derivation ---------------------------------------------------

    def _lub(self, elems) -> int | None:
        ub = [c for c in range(self.n) if all(self._leq[e][c] for e in elems)]
        least = [c for c in ub if all(self._leq[c][u] for u in ub)]
        return least[0] if len(least) == 1 else None

    def _derive_joins(self):
        return tuple(
            tuple(self._lub((a, b)) for b in range(self.n)) for a in range(self.n)
        )

    def _derive_bottom(self):
        return self._lub(())

    def _fold_join(self, elems) -> int:
        acc = self.bottom
        for e in elems:
            acc = self._join[acc][e]
        return acc

    def _compute_hom(self, a: int, b: int) -> int:
        return self._fold_join(
            [c for c in range(self.n) if self._leq[self._tensor[c][a]][b]]
        )

    def _compute_meet(self, a: int, b: int) -> int:
        return self._fold_join(
            [c for c in range(self.n) if self._leq[c][a] and self._leq[c][b]]
        )

    # -- audit ----------------------------------------------------------------

    def _audit(self) -> LawReport:
        rep = LawReport()
        n = range(self.n)
        leq, tns = self._leq, self._tensor

        rep.record("poset.reflexive", self._first_fail(
            ((a,) for a in n if not leq[a][a])))
        rep.record("poset.antisymmetric", self._first_fail(
            ((a, b) for a in n for b in n
             if a != b and leq[a][b] and leq[b][a])))
        rep.record("poset.transitive", self._first_fail(
            ((a, b, c) for a in n for b in n for c in n
             if leq[a][b] and leq[b][c] and not leq[a][c])))
        rep.record("lattice.bottom", PASS if self.bottom is not None
                   else Certificate(False, "lattice.bottom", ()))
        rep.record("lattice.joins", self._first_fail(
            ((a, b) for a in n for b in n if self._join[a][b] is None)))
        if not rep.ok:
            # Tensor laws would dereference missing joins; stop here.
            return rep
        if self._supplied_join is not None:
            rep.record("lattice.join_table_consistent", self._first_fail(
                ((a, b) for a in n for b in n
                 if self._supplied_join[a][b] != self._join[a][b])))

        rep.record("tensor.commutative", self._first_fail(
            ((a, b) for a in n for b in n if tns[a][b] != tns[b][a])))
        rep.record("tensor.associative", self._first_fail(
            ((a, b, c) for a in n for b in n for c in n
             if tns[tns[a][b]][c] != tns[a][tns[b][c]])))
        rep.record("tensor.unital", self._first_fail(
            ((a,) for a in n
             if tns[self.unit][a] != a or tns[a][self.unit] != a)))
        rep.record("tensor.distributes_over_join", self._first_fail(
            ((a, b, c) for a in n for b in n for c in n
             if tns[a][self._join[b][c]] != self._join[tns[a][b]][tns[a][c]])))
        rep.record("tensor.bottom_absorbing", self._first_fail(
            ((a,) for a in n if tns[a][self.bottom] != self.bottom)))
        # Residuation: {c : c⊗a ⊑ b} must have a greatest element.
        rep.record("residuation.exists", self._first_fail(
            ((a, b) for a in n for b in n
             if not leq[tns[self._compute_hom(a, b)][a]][b])))
        return rep

    @staticmethod
    def _first_fail(witnesses) -> Certificate:
        for w in witnesses:
            return Certificate(False, None, tuple(w))
        return PASS

    def _require_ok(self):
        if not self.report.ok:
            raise MalformedQuantale(
                f"law audit failed: {sorted(self.report.failures())}"
            )

    # -- lattice / monoid operations -----------------------------------------

    def leq(self, a: int, b: int) -> bool:
        return self._leq[a][b]

    def join(self, a: int, b: int) -> int:
        return self._join[a][b]

    def join_all(self, elems) -> int:
        return self._fold_join(elems)

    def meet(self, a: int, b: int) -> int:
        self._require_ok()
        return self._meet[a][b]

    def meet_all(self, elems) -> int:
        self._require_ok()
        acc = self.top
        for e in elems:
            acc = self._meet[acc][e]
        return acc

    def tensor(self, a: int, b: int) -> int:
        return self._tensor[a][b]

    def hom(self, a: int, b: int) -> int:
        """Residual ⋁{c : c⊗a ⊑ b}; c⊗a ⊑ b ⇔ c ⊑ hom(a,b)."""
        self._require_ok()
        return self._hom[a][b]

    def name(self, a: int) -> str:
        return self.elements[a]

    def index(self, name: str) -> int:
        return self.elements.index(name)

    # -- derived element classes ----------------------------------------------

    def is_monoid_element(self, a: int) -> bool:
        """I ⊑ a and a⊗a ⊑ a: a monoid in the one-object delooping."""
        return self._leq[self.unit][a] and self._leq[self._tensor[a][a]][a]

    def is_comonoid_element(self, c: int) -> bool:
        """c ⊑ I and c ⊑ c⊗c: a comonoid in the one-object delooping."""
        return self._leq[c][self.unit] and self._leq[c][self._tensor[c][c]]

    def monoid_elements(self):
        return [a for a in range(self.n) if self.is_monoid_element(a)]

    def comonoid_elements(self):
        return [c for c in range(self.n) if self.is_comonoid_element(c)]

    def require_monoid(self, a: int):
        if not self._leq[self.unit][a]:
            raise NotAMonoid(f"unit law fails for {self.name(a)}", (self.unit, a))
        if not self._leq[self._tensor[a][a]][a]:
            raise NotAMonoid(f"{self.name(a)} is not subidempotent-above", (a, a))

    def largest_subidempotent_below(self, m: int) -> int:
        """Greatest c ⊑ m with c ⊑ c⊗c, by the decreasing meet iteration
        v ← v ∧ (v⊗v); the limit dominates every subidempotent below m."""
        self._require_ok()
        v = m
        while True:
            nxt = self._meet[v][self._tensor[v][v]]
            if nxt == v:
                return v
            v = nxt

    def __eq__(self, other):
        return (
            isinstance(other, Quantale)
            and self.elements == other.elements
            and self._leq == other._leq
            and self._tensor == other._tensor
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.elements, self._leq, self._tensor, self.unit))

    def __repr__(self):
        return f"Quantale({list(self.elements)}, unit={self.name(self.unit)})"


def audit_laws(q: Quantale) -> LawReport:
    """Per-law pass/fail report; failures carry witness tuples."""
    return q.report


def boolean() -> Quantale:
    """({0,1}, ∧, 1, ∨): relations and preorders live here."""
    return Quantale(
        elements=("0", "1"),
        leq=((True, True), (False, True)),
        tensor=((0, 0), (0, 1)),
        unit=1,
    )


def tropical(n: int) -> Quantale:
    """({0..n, ∞}, truncated +, 0, min as join), order reversed numerically.

    Sums exceeding n overflow to the absorbing bottom ∞, which keeps the
    subidempotents at {0, ∞} so that hom-objects of generalized metric
    spaces carve out exactly the nonexpansive maps.
    """
    if n < 1:
        raise ValueError("tropical(n) needs n >= 1")
    inf = n + 1  # id of ∞
    size = n + 2
    names = tuple(str(i) for i in range(n + 1)) + ("inf",)

    def num_leq(a, b):  # a ⊑ b ⇔ a ≥ b numerically, ∞ largest
        av = float("inf") if a == inf else a
        bv = float("inf") if b == inf else b
        return av >= bv

    def tens(a, b):
        if a == inf or b == inf:
            return inf
        s = a + b
        return s if s <= n else inf

    return Quantale(
        elements=names,
        leq=tuple(tuple(num_leq(a, b) for b in range(size)) for a in range(size)),
        tensor=tuple(tuple(tens(a, b) for b in range(size)) for a in range(size)),
        unit=0,
    )


_TROPICAL_RE = re.compile(r"^tropical\((\d+)\)$")


def builtin(name: str) -> Quantale:
    """Builtin bases: ``boolean`` or ``tropical(N)``."""
    if name == "boolean":
        return boolean()
    m = _TROPICAL_RE.match(name)
    if m:
        return tropical(int(m.group(1)))
    raise ValueError(f"unknown builtin quantale {name!r}")

"""Finite-dimensional algebras, coalgebras and measurings over exact scalars.

Structure-constant presentations over Q (fractions) or F2 (residues mod 2);
all identities are polynomial in the constants, so everything is checked
with exact arithmetic and zero tolerance.

Conventions: an algebra's ``mult[i][j][k]`` is the e_k-coefficient of
e_i·e_j; a coalgebra's ``comult[i][j][k]`` is the e_j⊗e_k-coefficient of
Δ(e_i); comodules are left-sided (coaction X → C⊗X), as the hom-module
structure requires.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, SearchSpaceTooLarge
from .reporting import Certificate, PASS, failure

FIELDS = ("Q", "F2")


def _coerce(field: str, v):
    if field == "F2":
        return int(v) % 2
    return Fraction(v)


def _zero(field: str):
    return 0 if field == "F2" else Fraction(0)


def _one(field: str):
    return 1 if field == "F2" else Fraction(1)


def _add(field: str, a, b):
    return (a + b) % 2 if field == "F2" else a + b


def _mul(field: str, a, b):
    return (a * b) % 2 if field == "F2" else a * b


def _check_field(*structs):
    fields = {s.field for s in structs}
    if len(fields) != 1:
        raise DimensionMismatch(f"mixed scalar fields {sorted(fields)}")


@dataclass(frozen=True)
class Algebra:
    field: str
    dim: int
    mult: tuple  # mult[i][j][k]
    unit: tuple  # unit vector coefficients

    def __post_init__(self):
        cert = self.audit()
        if not cert.ok:
            raise DimensionMismatch(f"algebra audit failed: {cert}")

    def product(self, u, v):
        """Multiply two coefficient vectors."""
        f = self.field
        out = [_zero(f)] * self.dim
        for i in range(self.dim):
            if u[i] == _zero(f):
                continue
            for j in range(self.dim):
                if v[j] == _zero(f):
                    continue
                c = _mul(f, u[i], v[j])
                for k in range(self.dim):
                    out[k] = _add(f, out[k], _mul(f, c, self.mult[i][j][k]))
        return tuple(out)

    def audit(self) -> Certificate:
        f, n = self.field, self.dim
        if len(self.mult) != n or len(self.unit) != n:
            return failure("algebra.shape", (n,))
        basis = [
            tuple(_one(f) if t == i else _zero(f) for t in range(n))
            for i in range(n)
        ]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = self.product(self.product(basis[i], basis[j]), basis[k])
                    right = self.product(basis[i], self.product(basis[j], basis[k]))
                    if left != right:
                        return failure("algebra.associativity", (i, j, k))
        for i in range(n):
            if self.product(self.unit, basis[i]) != basis[i]:
                return failure("algebra.left_unit", (i,))
            if self.product(basis[i], self.unit) != basis[i]:
                return failure("algebra.right_unit", (i,))
        return PASS


@dataclass(frozen=True)
class Coalgebra:
    field: str
    dim: int
    comult: tuple  # comult[i][j][k]
    counit: tuple

    def __post_init__(self):
        cert = self.audit()
        if not cert.ok:
            raise DimensionMismatch(f"coalgebra audit failed: {cert}")

    def audit(self) -> Certificate:
        f, n = self.field, self.dim
        if len(self.comult) != n or len(self.counit) != n:
            return failure("coalgebra.shape", (n,))
        d = self.comult
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for r in range(n):
                        left = _zero(f)
                        for p in range(n):
                            left = _add(f, left, _mul(f, d[i][p][r], d[p][j][k]))
                        right = _zero(f)
                        for p in range(n):
                            right = _add(f, right, _mul(f, d[i][j][p], d[p][k][r]))
                        if left != right:
                            return failure("coalgebra.coassociativity", (i, j, k, r))
        for i in range(n):
            for k in range(n):
                left = _zero(f)
                for j in range(n):
                    left = _add(f, left, _mul(f, d[i][j][k], self.counit[j]))
                if left != (_one(f) if i == k else _zero(f)):
                    return failure("coalgebra.left_counit", (i, k))
                right = _zero(f)
                for j in range(n):
                    right = _add(f, right, _mul(f, d[i][k][j], self.counit[j]))
                if right != (_one(f) if i == k else _zero(f)):
                    return failure("coalgebra.right_counit", (i, k))
        return PASS


def trivial_coalgebra(field: str) -> Coalgebra:
    """The ground field as a coalgebra: Δ1 = 1⊗1, ε = 1."""
    return Coalgebra(field, 1, ((((_one(field)),),),), (_one(field),))


def ground_algebra(field: str) -> Algebra:
    return Algebra(field, 1, ((((_one(field)),),),), (_one(field),))


@dataclass(frozen=True)
class Measuring:
    """A bilinear map σ: C⊗A → B given by sigma[c][a] = vector over B."""

    coalgebra: Coalgebra
    source: Algebra
    target: Algebra
    sigma: tuple

    def __post_init__(self):
        _check_field(self.coalgebra, self.source, self.target)
        if len(self.sigma) != self.coalgebra.dim or any(
            len(row) != self.source.dim for row in self.sigma
        ) or any(
            len(v) != self.target.dim for row in self.sigma for v in row
        ):
            raise DimensionMismatch("sigma tensor has wrong shape")

    def apply(self, cvec, avec):
        f = self.coalgebra.field
        out = [_zero(f)] * self.target.dim
        for c in range(self.coalgebra.dim):
            if cvec[c] == _zero(f):
                continue
            for a in range(self.source.dim):
                if avec[a] == _zero(f):
                    continue
                coef = _mul(f, cvec[c], avec[a])
                for b in range(self.target.dim):
                    out[b] = _add(f, out[b], _mul(f, coef, self.sigma[c][a][b]))
        return tuple(out)


def verify_measuring(m: Measuring) -> Certificate:
    """σ(c⊗aa') = Σ_(c) σ(c₍₁₎⊗a)σ(c₍₂₎⊗a') and σ(c⊗1) = ε(c)1, on bases."""
    c_dim, a_dim = m.coalgebra.dim, m.source.dim
    f = m.coalgebra.field
    amul, bmul = m.source, m.target
    d = m.coalgebra.comult
    for c in range(c_dim):
        for a in range(a_dim):
            for a2 in range(a_dim):
                aa = amul.mult[a][a2]
                lhs = [_zero(f)] * bmul.dim
                for p in range(a_dim):
                    for b in range(bmul.dim):
                        lhs[b] = _add(f, lhs[b], _mul(f, aa[p], m.sigma[c][p][b]))
                rhs = [_zero(f)] * bmul.dim
                for c1 in range(c_dim):
                    for c2 in range(c_dim):
                        if d[c][c1][c2] == _zero(f):
                            continue
                        prod = bmul.product(m.sigma[c1][a], m.sigma[c2][a2])
                        for b in range(bmul.dim):
                            rhs[b] = _add(f, rhs[b], _mul(f, d[c][c1][c2], prod[b]))
                if tuple(lhs) != tuple(rhs):
                    return failure("measuring.multiplicativity", (c, a, a2))
    for c in range(c_dim):
        lhs = m.apply(
            tuple(_one(f) if t == c else _zero(f) for t in range(c_dim)),
            m.source.unit,
        )
        rhs = tuple(_mul(f, m.coalgebra.counit[c], v) for v in m.target.unit)
        if lhs != rhs:
            return failure("measuring.unit", (c,))
    return PASS


def convolution_algebra(c: Coalgebra, a: Algebra) -> Algebra:
    """Hom(C,A) with (f∗g)(x) = Σ f(x₍₁₎)g(x₍₂₎) and unit η∘ε.

    Basis E_(i,j) maps c_i ↦ a_j; the flat index is i·dim(A)+j.
    """
    _check_field(c, a)
    f = c.field
    dim = c.dim * a.dim

    def flat(i, j):
        return i * a.dim + j

    mult = [[[_zero(f)] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(c.dim):
        for j in range(a.dim):
            for k in range(c.dim):
                for l in range(a.dim):
                    target = a.mult[j][l]
                    for mth in range(c.dim):
                        coef = c.comult[mth][i][k]
                        if coef == _zero(f):
                            continue
                        for r in range(a.dim):
                            mult[flat(i, j)][flat(k, l)][flat(mth, r)] = _add(
                                f,
                                mult[flat(i, j)][flat(k, l)][flat(mth, r)],
                                _mul(f, coef, target[r]),
                            )
    unit = [_zero(f)] * dim
    for mth in range(c.dim):
        for r in range(a.dim):
            unit[flat(mth, r)] = _mul(f, c.counit[mth], a.unit[r])
    return Algebra(
        f,
        dim,
        tuple(tuple(tuple(v) for v in row) for row in mult),
        tuple(unit),
    )


def dual_coalgebra(a: Algebra) -> Coalgebra:
    """Transpose of the multiplication; counit is evaluation at the unit."""
    comult = tuple(
        tuple(
            tuple(a.mult[j][k][i] for k in range(a.dim))
            for j in range(a.dim)
        )
        for i in range(a.dim)
    )
    return Coalgebra(a.field, a.dim, comult, tuple(a.unit))


def dual_algebra(c: Coalgebra) -> Algebra:
    """Transpose of the comultiplication; unit is the counit covector."""
    mult = tuple(
        tuple(
            tuple(c.comult[k][i][j] for k in range(c.dim))
            for j in range(c.dim)
        )
        for i in range(c.dim)
    )
    return Algebra(c.field, c.dim, mult, tuple(c.counit))


@dataclass(frozen=True)
class LinModule:
    """Left module: action[a][m] = vector of coefficients for e_a·x_m."""

    algebra: Algebra
    dim: int
    action: tuple

    def __post_init__(self):
        cert = self.audit()
        if not cert.ok:
            raise DimensionMismatch(f"module audit failed: {cert}")

    def act(self, avec, xvec):
        f = self.algebra.field
        out = [_zero(f)] * self.dim
        for a in range(self.algebra.dim):
            if avec[a] == _zero(f):
                continue
            for m in range(self.dim):
                if xvec[m] == _zero(f):
                    continue
                coef = _mul(f, avec[a], xvec[m])
                for k in range(self.dim):
                    out[k] = _add(f, out[k], _mul(f, coef, self.action[a][m][k]))
        return tuple(out)

    def audit(self) -> Certificate:
        f = self.algebra.field
        n, d = self.algebra.dim, self.dim
        if len(self.action) != n or any(len(r) != d for r in self.action):
            return failure("module.shape", (n, d))
        for i in range(n):
            for j in range(n):
                for m in range(d):
                    lhs = [_zero(f)] * d
                    for p in range(n):
                        for k in range(d):
                            lhs[k] = _add(
                                f, lhs[k],
                                _mul(f, self.algebra.mult[i][j][p],
                                     self.action[p][m][k]),
                            )
                    rhs = [_zero(f)] * d
                    for p in range(d):
                        for k in range(d):
                            rhs[k] = _add(
                                f, rhs[k],
                                _mul(f, self.action[j][m][p],
                                     self.action[i][p][k]),
                            )
                    if tuple(lhs) != tuple(rhs):
                        return failure("module.associativity", (i, j, m))
        for m in range(d):
            unit_act = [_zero(f)] * d
            for i in range(n):
                for k in range(d):
                    unit_act[k] = _add(
                        f, unit_act[k],
                        _mul(f, self.algebra.unit[i], self.action[i][m][k]),
                    )
            expected = tuple(_one(f) if k == m else _zero(f) for k in range(d))
            if tuple(unit_act) != expected:
                return failure("module.unit", (m,))
        return PASS


@dataclass(frozen=True)
class LinComodule:
    """Left comodule: coaction[x][c][x'] is the c⊗x' coefficient of δ(x)."""

    coalgebra: Coalgebra
    dim: int
    coaction: tuple

    def __post_init__(self):
        cert = self.audit()
        if not cert.ok:
            raise DimensionMismatch(f"comodule audit failed: {cert}")

    def audit(self) -> Certificate:
        f = self.coalgebra.field
        n, d = self.coalgebra.dim, self.dim
        if len(self.coaction) != d:
            return failure("comodule.shape", (d,))
        dl = self.coaction
        dc = self.coalgebra.comult
        # (Δ⊗1)δ = (1⊗δ)δ
        for x in range(d):
            for c in range(n):
                for c2 in range(n):
                    for x2 in range(d):
                        lhs = _zero(f)
                        for p in range(n):
                            lhs = _add(f, lhs, _mul(f, dl[x][p][x2], dc[p][c][c2]))
                        rhs = _zero(f)
                        for p in range(d):
                            rhs = _add(f, rhs, _mul(f, dl[x][c][p], dl[p][c2][x2]))
                        if lhs != rhs:
                            return failure("comodule.coassociativity", (x, c, c2, x2))
        for x in range(d):
            for x2 in range(d):
                val = _zero(f)
                for c in range(n):
                    val = _add(f, val, _mul(f, dl[x][c][x2], self.coalgebra.counit[c]))
                if val != (_one(f) if x == x2 else _zero(f)):
                    return failure("comodule.counit", (x, x2))
        return PASS


def regular_module(a: Algebra) -> LinModule:
    return LinModule(a, a.dim, a.mult)


def regular_comodule(c: Coalgebra) -> LinComodule:
    return LinComodule(c, c.dim, c.comult)


def hom_module_structure(x: LinComodule, m: LinModule) -> LinModule:
    """[X,M] as a module over the convolution algebra [C,A].

    The action of f: C→A on φ: X→M sends x to Σ f(c)·φ(x') where
    δ(x) = Σ c⊗x'; coact, evaluate both, then act.
    """
    _check_field(x.coalgebra, m.algebra)
    f = m.algebra.field
    conv = convolution_algebra(x.coalgebra, m.algebra)
    dim = x.dim * m.dim

    def flat_hom(xi, mi):
        return xi * m.dim + mi

    action = [[[_zero(f)] * dim for _ in range(dim)] for _ in range(conv.dim)]
    for ci in range(x.coalgebra.dim):
        for aj in range(m.algebra.dim):
            amap = ci * m.algebra.dim + aj  # basis map c_ci ↦ a_aj of [C,A]
            for xk in range(x.dim):
                for ml in range(m.dim):
                    phi = flat_hom(xk, ml)
                    for p in range(x.dim):
                        coef = x.coaction[p][ci][xk]
                        if coef == _zero(f):
                            continue
                        for mk in range(m.dim):
                            action[amap][phi][flat_hom(p, mk)] = _add(
                                f,
                                action[amap][phi][flat_hom(p, mk)],
                                _mul(f, coef, m.action[aj][ml][mk]),
                            )
    return LinModule(
        conv,
        dim,
        tuple(tuple(tuple(v) for v in row) for row in action),
    )


# -- enumeration-based certification ---------------------------------------


def _f2_tuples(shape):
    """All tensors of the given shape over F2, as nested tuples."""
    total = 1
    for s in shape:
        total *= s
    for bits in itertools.product((0, 1), repeat=total):
        yield _reshape(bits, shape)


def _reshape(flat, shape):
    if len(shape) == 1:
        return tuple(flat)
    step = len(flat) // shape[0]
    return tuple(
        _reshape(flat[i * step:(i + 1) * step], shape[1:]) for i in range(shape[0])
    )


def all_coalgebras_f2(dim: int):
    """Every coalgebra structure on F2^dim, by filtering raw tables."""
    for comult in _f2_tuples((dim, dim, dim)):
        for counit in _f2_tuples((dim,)):
            c = object.__new__(Coalgebra)
            object.__setattr__(c, "field", "F2")
            object.__setattr__(c, "dim", dim)
            object.__setattr__(c, "comult", comult)
            object.__setattr__(c, "counit", counit)
            if c.audit().ok:
                yield Coalgebra("F2", dim, comult, counit)


def all_algebras_f2(dim: int):
    for mult in _f2_tuples((dim, dim, dim)):
        for unit in _f2_tuples((dim,)):
            a = object.__new__(Algebra)
            object.__setattr__(a, "field", "F2")
            object.__setattr__(a, "dim", dim)
            object.__setattr__(a, "mult", mult)
            object.__setattr__(a, "unit", unit)
            if a.audit().ok:
                yield Algebra("F2", dim, mult, unit)


def coalgebra_morphisms(c: Coalgebra, p: Coalgebra):
    """All coalgebra maps g: C→P over F2, as dim(P)×dim(C) matrices."""
    f = c.field
    for g in _f2_tuples((p.dim, c.dim)):
        ok = True
        for i in range(c.dim):
            val = _zero(f)
            for r in range(p.dim):
                val = _add(f, val, _mul(f, g[r][i], p.counit[r]))
            if val != c.counit[i]:
                ok = False
                break
        if not ok:
            continue
        for i in range(c.dim):
            for r1 in range(p.dim):
                for r2 in range(p.dim):
                    lhs = _zero(f)
                    for s in range(p.dim):
                        lhs = _add(f, lhs, _mul(f, g[s][i], p.comult[s][r1][r2]))
                    rhs = _zero(f)
                    for j in range(c.dim):
                        for k in range(c.dim):
                            rhs = _add(
                                f, rhs,
                                _mul(f, c.comult[i][j][k],
                                     _mul(f, g[r1][j], g[r2][k])),
                            )
                    if lhs != rhs:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            yield g


@dataclass
class TerminalityReport:
    """Outcome of the bounded terminality certification for a candidate
    universal measuring coalgebra; the bound is part of the statement."""

    ok: bool
    search_dim: int
    measurings_checked: int
    failures: list

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "search_dim": self.search_dim,
            "measurings_checked": self.measurings_checked,
            "failures": self.failures,
        }


def certify_universal_measuring(
    candidate: Coalgebra,
    rho: Measuring,
    a: Algebra,
    b: Algebra,
    search_dim: int,
    space_limit: int = 10**7,
) -> TerminalityReport:
    """Certify terminality of (candidate, rho) among measurings C⊗A→B with
    dim C ≤ search_dim, by total enumeration over F2.

    For every coalgebra C within the bound and every measuring σ, exactly
    one coalgebra map g: C→candidate with ρ∘(g⊗id) = σ must exist.
    """
    if candidate.field != "F2":
        raise DimensionMismatch("certification enumerates over F2 only")
    _check_field(candidate, a, b)
    if rho.coalgebra != candidate or rho.source != a or rho.target != b:
        raise DimensionMismatch("rho must be a measuring from the candidate")
    if not verify_measuring(rho).ok:
        return TerminalityReport(False, search_dim, 0,
                                 [("candidate_not_measuring", None)])
    bound = 0
    for d in range(1, search_dim + 1):
        bound += (2 ** (d * d * d + d)) * (2 ** (d * a.dim * b.dim)) \
            * (2 ** (candidate.dim * d))
    if bound > space_limit:
        raise SearchSpaceTooLarge(bound, space_limit)

    failures = []
    checked = 0
    f = "F2"
    for d in range(1, search_dim + 1):
        for c in all_coalgebras_f2(d):
            for sigma in _f2_tuples((d, a.dim, b.dim)):
                m = Measuring(c, a, b, sigma)
                if not verify_measuring(m).ok:
                    continue
                checked += 1
                count = 0
                for g in coalgebra_morphisms(c, candidate):
                    # ρ∘(g⊗id) = σ on basis elements
                    good = True
                    for i in range(d):
                        for aj in range(a.dim):
                            vec = [_zero(f)] * b.dim
                            for r in range(candidate.dim):
                                if g[r][i] == _zero(f):
                                    continue
                                for bk in range(b.dim):
                                    vec[bk] = _add(
                                        f, vec[bk],
                                        _mul(f, g[r][i], rho.sigma[r][aj][bk]),
                                    )
                            if tuple(vec) != tuple(sigma[i][aj]):
                                good = False
                                break
                        if not good:
                            break
                    if good:
                        count += 1
                if count != 1:
                    failures.append(
                        (("coalgebra", c.comult, c.counit),
                         ("sigma", sigma), count)
                    )
    return TerminalityReport(not failures, search_dim, checked, failures)

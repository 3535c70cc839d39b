"""Lie-Poisson algebra of the site duals and the coresidue moment map.

Coordinates on the dual of a matrix Lie algebra are taken to be the matrix
entries themselves: the generator at (p, q) of site j is the function
M |-> M[p][q], whose trace-form dual basis vector is the matrix unit E_qp.
With this choice the Lie-Poisson bracket of two entry coordinates is

    {x_pq, x_rs} = [p == s] x_rq - [q == r] x_ps      (same site, else 0)

and invariant polynomials of a matrix agree literally with the same
polynomials in the entry coordinates, which removes any basis-translation
layer between the matrix side and the symbolic side.

Sites are either a full matrix algebra (weight zero) or the block
subalgebra cut out by a parahoric weight: entries (p, q) whose weight
diagonal satisfies t_p == t_q.  Block entry sets are closed under the
bracket rule above, and each site's structure constants are checked for
antisymmetry and the Jacobi identity when the site is first built.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import higgs, linalgq, polyq
from .errors import (
    AlgebraMismatchError,
    ConfigError,
    FiltrationError,
    GroupError,
    ShapeError,
)
from .higgs import LogHiggsField
from .linalgq import Matrix, RingOps
from .parahoric import ParahoricDatum
from .rootsys import cocharacter_to_diagonal, entry_to_root

Monomial = Tuple[Tuple[int, int], ...]  # ((generator, exponent), ...) sorted


def worker_count() -> int:
    """Worker bound for batch verification, from LOGAHORIC_THREADS."""
    raw = os.environ.get("LOGAHORIC_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"LOGAHORIC_THREADS must be a positive integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"LOGAHORIC_THREADS must be a positive integer, got {raw!r}")
    return value


# ---------------------------------------------------------------------------
# Site algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SiteAlgebra:
    matrix_size: int
    entries: Tuple[Tuple[int, int], ...]
    labels: Tuple[str, ...]
    bracket_table: Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]]
    form: Tuple[Tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.entries)


_SITE_CACHE: Dict[Tuple[int, Tuple[Tuple[int, int], ...]], SiteAlgebra] = {}


def _build_site(n: int, entries: Tuple[Tuple[int, int], ...]) -> SiteAlgebra:
    if (n, entries) in _SITE_CACHE:
        return _SITE_CACHE[(n, entries)]
    index = {e: a for a, e in enumerate(entries)}
    table: Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]] = {}
    for a, (p, q) in enumerate(entries):
        for b, (r, s) in enumerate(entries):
            acc: Dict[int, Fraction] = {}
            if p == s:
                if (r, q) not in index:
                    raise ShapeError("entry set is not bracket-closed")
                acc[index[(r, q)]] = acc.get(index[(r, q)], Fraction(0)) + 1
            if q == r:
                if (p, s) not in index:
                    raise ShapeError("entry set is not bracket-closed")
                acc[index[(p, s)]] = acc.get(index[(p, s)], Fraction(0)) - 1
            row = tuple((c, v) for c, v in sorted(acc.items()) if v)
            if row:
                table[(a, b)] = row

    def tbl(a: int, b: int) -> Dict[int, Fraction]:
        return dict(table.get((a, b), ()))

    def lb(a: int, comb: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for b, cb in comb.items():
            for c, f in table.get((a, b), ()):
                out[c] = out.get(c, Fraction(0)) + cb * f
        return {k: v for k, v in out.items() if v}

    dim = len(entries)
    for a in range(dim):
        for b in range(dim):
            anti = lb(a, {b: Fraction(1)})
            flip = lb(b, {a: Fraction(1)})
            assert all(anti.get(k, 0) == -flip.get(k, 0) for k in set(anti) | set(flip))
    for a in range(dim):
        for b in range(dim):
            for c in range(dim):
                total: Dict[int, Fraction] = {}
                for part in (
                    lb(a, tbl(b, c)),
                    lb(b, tbl(c, a)),
                    lb(c, tbl(a, b)),
                ):
                    for k, v in part.items():
                        total[k] = total.get(k, Fraction(0)) + v
                assert all(v == 0 for v in total.values()), "Jacobi identity failed"

    form = [
        [
            Fraction(1) if (p == s2 and q == r2) else Fraction(0)
            for (r2, s2) in entries
        ]
        for (p, q) in entries
    ]
    site = SiteAlgebra(
        matrix_size=n,
        entries=entries,
        labels=tuple(f"x{p}{q}" for p, q in entries),
        bracket_table=table,
        form=tuple(tuple(row) for row in form),
    )
    _SITE_CACHE[(n, entries)] = site
    return site


def full_site(n: int) -> SiteAlgebra:
    entries = tuple((p, q) for p in range(n) for q in range(n))
    return _build_site(n, entries)


def levi_site(datum: ParahoricDatum) -> SiteAlgebra:
    """Block subalgebra of the weight at a point, in the type-A realization."""
    rs = datum.system
    n = rs.rank + 1
    t = cocharacter_to_diagonal(rs, datum.theta)
    entries = tuple(
        (p, q) for p in range(n) for q in range(n) if t[p] == t[q]
    )
    return _build_site(n, entries)


@dataclass(frozen=True)
class LiePoissonAlgebra:
    sites: Tuple[SiteAlgebra, ...]
    offsets: Tuple[int, ...]
    gen_count: int
    labels: Tuple[str, ...]

    def site_of(self, gen: int) -> int:
        for j in range(len(self.sites) - 1, -1, -1):
            if gen >= self.offsets[j]:
                return j
        raise AlgebraMismatchError(f"generator {gen} out of range")

    def generator(self, j: int, p: int, q: int) -> "PoissonPolynomial":
        site = self.sites[j]
        try:
            local = site.entries.index((p, q))
        except ValueError:
            raise AlgebraMismatchError(
                f"site {j} has no generator at entry ({p}, {q})"
            )
        gen = self.offsets[j] + local
        return PoissonPolynomial(self, (((((gen, 1),)), Fraction(1)),))


def _assemble(sites: Sequence[SiteAlgebra]) -> LiePoissonAlgebra:
    offsets = []
    count = 0
    labels: List[str] = []
    for j, site in enumerate(sites):
        offsets.append(count)
        count += site.dim
        labels.extend(f"x{j}_{lbl[1:]}" for lbl in site.labels)
    return LiePoissonAlgebra(
        sites=tuple(sites),
        offsets=tuple(offsets),
        gen_count=count,
        labels=tuple(labels),
    )


def matrix_poisson_algebra(n: int, site_count: int) -> LiePoissonAlgebra:
    """Product of site_count copies of the full matrix dual."""
    return _assemble([full_site(n)] * site_count)


def levi_poisson_algebra(data: Sequence[ParahoricDatum]) -> LiePoissonAlgebra:
    return _assemble([levi_site(d) for d in data])


# ---------------------------------------------------------------------------
# Polynomials in the coordinates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PoissonPolynomial:
    algebra: LiePoissonAlgebra
    terms: Tuple[Tuple[Monomial, Fraction], ...]

    @staticmethod
    def zero(alg: LiePoissonAlgebra) -> "PoissonPolynomial":
        return PoissonPolynomial(alg, ())

    @staticmethod
    def constant(alg: LiePoissonAlgebra, c) -> "PoissonPolynomial":
        c = Fraction(c)
        return PoissonPolynomial(alg, (((), c),) if c else ())

    @staticmethod
    def _from_dict(alg, d: Dict[Monomial, Fraction]) -> "PoissonPolynomial":
        return PoissonPolynomial(
            alg, tuple(sorted((m, c) for m, c in d.items() if c))
        )

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> List[int]:
        seen = set()
        for mono, _ in self.terms:
            for g, _ in mono:
                seen.add(g)
        return sorted(seen)

    def _check_mate(self, other: "PoissonPolynomial") -> None:
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraMismatchError("polynomials live over different algebras")

    def __add__(self, other: "PoissonPolynomial") -> "PoissonPolynomial":
        self._check_mate(other)
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, Fraction(0)) + c
        return PoissonPolynomial._from_dict(self.algebra, d)

    def __sub__(self, other: "PoissonPolynomial") -> "PoissonPolynomial":
        return self + (-other)

    def __neg__(self) -> "PoissonPolynomial":
        return PoissonPolynomial(self.algebra, tuple((m, -c) for m, c in self.terms))

    def scaled(self, c) -> "PoissonPolynomial":
        c = Fraction(c)
        if not c:
            return PoissonPolynomial.zero(self.algebra)
        return PoissonPolynomial(self.algebra, tuple((m, k * c) for m, k in self.terms))

    def __mul__(self, other) -> "PoissonPolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        self._check_mate(other)
        d: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                merged: Dict[int, int] = dict(m1)
                for g, e in m2:
                    merged[g] = merged.get(g, 0) + e
                key = tuple(sorted(merged.items()))
                d[key] = d.get(key, Fraction(0)) + c1 * c2
        return PoissonPolynomial._from_dict(self.algebra, d)

    __rmul__ = __mul__

    def partial(self, gen: int) -> "PoissonPolynomial":
        d: Dict[Monomial, Fraction] = {}
        for mono, c in self.terms:
            md = dict(mono)
            e = md.get(gen)
            if not e:
                continue
            if e == 1:
                del md[gen]
            else:
                md[gen] = e - 1
            key = tuple(sorted(md.items()))
            d[key] = d.get(key, Fraction(0)) + c * e
        return PoissonPolynomial._from_dict(self.algebra, d)

    def evaluate(self, site_values: Sequence[Matrix]) -> Fraction:
        alg = self.algebra
        total = Fraction(0)
        for mono, c in self.terms:
            term = c
            for g, e in mono:
                j = alg.site_of(g)
                p, q = alg.sites[j].entries[g - alg.offsets[j]]
                term *= Fraction(site_values[j][p][q]) ** e
            total += term
        return total

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.terms:
            factors = []
            for g, e in mono:
                lbl = self.algebra.labels[g]
                factors.append(lbl if e == 1 else f"{lbl}^{e}")
            body = "*".join(factors)
            if body:
                parts.append(f"{c}*{body}" if c != 1 else body)
            else:
                parts.append(str(c))
        return " + ".join(parts)


def bracket(
    f: PoissonPolynomial, g: PoissonPolynomial, alg: LiePoissonAlgebra
) -> PoissonPolynomial:
    """Lie-Poisson bracket, extended to polynomials by the Leibniz rule."""
    for pol in (f, g):
        if pol.algebra is not alg and pol.algebra != alg:
            raise AlgebraMismatchError("polynomial does not belong to this algebra")
        for gen in pol.variables():
            if not 0 <= gen < alg.gen_count:
                raise AlgebraMismatchError(f"foreign generator {gen}")
    acc: Dict[Monomial, Fraction] = {}
    fvars = f.variables()
    gvars = g.variables()
    fparts = {a: f.partial(a) for a in fvars}
    gparts = {b: g.partial(b) for b in gvars}
    for a in fvars:
        ja = alg.site_of(a)
        offset = alg.offsets[ja]
        table = alg.sites[ja].bracket_table
        for b in gvars:
            if alg.site_of(b) != ja or a == b:
                continue
            row = table.get((a - offset, b - offset))
            if not row:
                continue
            prod = fparts[a] * gparts[b]
            if prod.is_zero:
                continue
            for c_local, coeff in row:
                gen_poly = PoissonPolynomial(
                    alg, ((((offset + c_local, 1),), Fraction(1)),)
                )
                for mono, cf in (prod * gen_poly).terms:
                    acc[mono] = acc.get(mono, Fraction(0)) + cf * coeff
    return PoissonPolynomial._from_dict(alg, acc)


def site_casimir(alg: LiePoissonAlgebra, j: int) -> PoissonPolynomial:
    """Quadratic Casimir of site j: half the form-trace of the square."""
    site = alg.sites[j]
    out = PoissonPolynomial.zero(alg)
    for p, q in site.entries:
        out = out + (alg.generator(j, p, q) * alg.generator(j, q, p)).scaled(
            Fraction(1, 2)
        )
    return out


def site_invariant_polynomials(
    alg: LiePoissonAlgebra, j: int
) -> Tuple[PoissonPolynomial, ...]:
    """Characteristic-coefficient functions of site j's matrix of generators.

    Entries outside the site's block are filled with the zero polynomial.
    Every one of these is a Casimir: it brackets to zero with each generator
    of the site, which the symbolic bracket verifies exactly in tests.
    """
    site = alg.sites[j]
    n = site.matrix_size
    ring = _xi_ring(alg)
    present = set(site.entries)
    rows = [
        [
            alg.generator(j, p, q) if (p, q) in present else ring.zero
            for q in range(n)
        ]
        for p in range(n)
    ]
    cs = linalgq.char_coeffs(rows, ring)
    out = []
    for i in range(1, n + 1):
        sign = Fraction(-1 if i % 2 else 1)
        out.append(cs[n - i].scaled(sign))
    return tuple(out)


# ---------------------------------------------------------------------------
# Involution verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvolutionReport:
    pair_count: int
    nonzero_pairs: Tuple[Tuple[int, int, str], ...]

    @property
    def all_commute(self) -> bool:
        return not self.nonzero_pairs

    def to_json_dict(self) -> dict:
        return {
            "pair_count": self.pair_count,
            "all_commute": self.all_commute,
            "nonzero_pairs": [
                {"i": i, "j": j, "bracket": s} for i, j, s in self.nonzero_pairs
            ],
        }


def verify_involution(
    hams: Sequence[PoissonPolynomial], alg: LiePoissonAlgebra
) -> InvolutionReport:
    """Bracket every pair of Hamiltonians; pairs are distributed over a
    thread pool bounded by LOGAHORIC_THREADS and merged back in pair order."""
    pairs = list(combinations(range(len(hams)), 2))
    workers = max(1, min(worker_count(), len(pairs) or 1))

    def job(idx: int) -> Tuple[int, PoissonPolynomial]:
        i, j = pairs[idx]
        return idx, bracket(hams[i], hams[j], alg)

    results: List[Optional[PoissonPolynomial]] = [None] * len(pairs)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for idx, value in pool.map(job, range(len(pairs))):
            results[idx] = value
    nonzero = tuple(
        (pairs[idx][0], pairs[idx][1], results[idx].to_string())
        for idx in range(len(pairs))
        if not results[idx].is_zero
    )
    return InvolutionReport(pair_count=len(pairs), nonzero_pairs=nonzero)


def _xi_ring(alg: LiePoissonAlgebra) -> RingOps:
    return RingOps(
        zero=PoissonPolynomial.zero(alg),
        one=PoissonPolynomial.constant(alg, 1),
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        neg=lambda a: -a,
        div_int=lambda a, k: a.scaled(Fraction(1, k)),
    )


def _zpoly_ring(alg: LiePoissonAlgebra) -> RingOps:
    """Dense polynomials in z whose coefficients are coordinate polynomials."""
    base = _xi_ring(alg)

    def trim(p: list) -> list:
        while p and p[-1].is_zero:
            p.pop()
        return p

    def add(p, q):
        out = [base.zero] * max(len(p), len(q))
        for i, c in enumerate(p):
            out[i] = out[i] + c
        for i, c in enumerate(q):
            out[i] = out[i] + c
        return trim(out)

    def mul(p, q):
        if not p or not q:
            return []
        out = [base.zero] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            if a.is_zero:
                continue
            for j, b in enumerate(q):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return trim(out)

    return RingOps(
        zero=[],
        one=[base.one],
        add=add,
        mul=mul,
        neg=lambda p: [-c for c in p],
        div_int=lambda p, k: [c.scaled(Fraction(1, k)) for c in p],
    )


def hitchin_coefficient_hamiltonians(
    points: Sequence, n: int, form: str = "SL"
) -> Tuple[LiePoissonAlgebra, Tuple[PoissonPolynomial, ...]]:
    """Expand the invariant sections of a symbolic Lax matrix.

    The residues are matrices of coordinate generators, one full matrix site
    per marked point; every z-coefficient of every invariant section of
    A(z) = prod(z - x_k) L(z) is returned as a polynomial Hamiltonian.
    """
    if form not in ("SL", "GL"):
        raise ShapeError(f"form must be SL or GL, got {form!r}")
    xs = [Fraction(x) for x in points]
    s = len(xs)
    alg = matrix_poisson_algebra(n, s)
    ring = _zpoly_ring(alg)
    basis = [
        polyq.from_roots([x for k, x in enumerate(xs) if k != s_idx])
        for s_idx in range(s)
    ]
    entries = []
    for p in range(n):
        row = []
        for q in range(n):
            e: list = []
            for j in range(s):
                lifted = [
                    PoissonPolynomial.zero(alg) if c == 0
                    else alg.generator(j, p, q).scaled(c)
                    for c in basis[j]
                ]
                e = ring.add(e, lifted)
            row.append(e)
        entries.append(row)
    cs = linalgq.char_coeffs(entries, ring)
    start = 1 if form == "GL" else 2
    hams: List[PoissonPolynomial] = []
    for i in range(start, n + 1):
        section = cs[n - i]
        sign = Fraction(-1 if i % 2 else 1)
        for coeff in section:
            scaled = coeff.scaled(sign)
            if not scaled.is_zero:
                hams.append(scaled)
    return alg, tuple(hams)


# ---------------------------------------------------------------------------
# Moment map and level action
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MomentValue:
    sites: Tuple[Matrix, ...]
    data: Optional[Tuple[Optional[ParahoricDatum], ...]] = None

    @property
    def site_count(self) -> int:
        return len(self.sites)


def _weight_diagonal(datum: ParahoricDatum) -> List[Fraction]:
    return cocharacter_to_diagonal(datum.system, datum.theta)


def moment_map(
    f: LogHiggsField, data: Optional[Sequence[Optional[ParahoricDatum]]] = None
) -> MomentValue:
    """Coresidues of the field: block projections of the residues.

    With no weight data every residue passes through unchanged.  A weight at
    a point first constrains the residue (the constant Laurent class must
    lie in the weight's parahoric stalk: entries in channels with positive
    jump must vanish) and then keeps only the block part, the entries whose
    weight diagonal values agree; the discarded part pairs to zero with the
    block subalgebra under the trace form.
    """
    if data is None:
        data = f.theta_data
    if data is not None and len(data) != f.site_count:
        raise ShapeError("one weight datum (or None) per marked point is required")
    n = f.matrix_size
    sites: List[Matrix] = []
    for j, res in enumerate(f.residues):
        datum = data[j] if data is not None else None
        if datum is None:
            sites.append(linalgq.copy(res))
            continue
        rs = datum.system
        if rs.family != "A" or rs.rank + 1 != n:
            raise ShapeError(
                f"weight datum at point {j} does not match the {n}x{n} realization"
            )
        t = _weight_diagonal(datum)
        for p in range(n):
            for q in range(n):
                if p != q and res[p][q] != 0:
                    r = entry_to_root(rs, p, q)
                    if datum.jumps[r] > 0:
                        raise FiltrationError(
                            f"residue {j} entry ({p},{q}) is outside the parahoric "
                            f"stalk (jump {datum.jumps[r]} > 0)"
                        )
        proj = linalgq.zeros(n)
        for p in range(n):
            for q in range(n):
                if t[p] == t[q]:
                    proj[p][q] = Fraction(res[p][q])
        sites.append(proj)
    return MomentValue(
        sites=tuple(sites),
        data=tuple(data) if data is not None else None,
    )


def _check_levi_group_element(g: Matrix, datum: Optional[ParahoricDatum], n: int):
    if len(g) != n or any(len(row) != n for row in g):
        raise ShapeError(f"group element must be {n}x{n}")
    if datum is not None:
        t = _weight_diagonal(datum)
        for p in range(n):
            for q in range(n):
                if t[p] != t[q] and g[p][q] != 0:
                    raise GroupError(
                        f"entry ({p},{q}) is outside the weight's block subgroup"
                    )
    try:
        return linalgq.inverse(g)
    except ArithmeticError:
        raise GroupError("group element is singular")


def coadjoint_act(gs: Sequence[Matrix], m: MomentValue) -> MomentValue:
    """Site-wise conjugation of the form-dual representatives."""
    if len(gs) != m.site_count:
        raise ShapeError("one group element per site is required")
    out = []
    for j, (g, site) in enumerate(zip(gs, m.sites)):
        n = len(site)
        datum = m.data[j] if m.data is not None else None
        g = linalgq.mat(g)
        ginv = _check_levi_group_element(g, datum, n)
        out.append(linalgq.mat_mul(linalgq.mat_mul(g, site), ginv))
    return MomentValue(sites=tuple(out), data=m.data)


def infinitesimal_action(
    directions: Sequence[Matrix], f: LogHiggsField
) -> LogHiggsField:
    """Residue variations [Y_j, X_j] of the site directions Y."""
    if len(directions) != f.site_count:
        raise ShapeError("one direction per marked point is required")
    n = f.matrix_size
    varied = []
    for j, y in enumerate(directions):
        y = linalgq.mat(y)
        if len(y) != n or any(len(row) != n for row in y):
            raise ShapeError(f"direction {j} must be {n}x{n}")
        if f.theta_data is not None and f.theta_data[j] is not None:
            t = _weight_diagonal(f.theta_data[j])
            for p in range(n):
                for q in range(n):
                    if t[p] != t[q] and y[p][q] != 0:
                        raise FiltrationError(
                            f"direction {j} entry ({p},{q}) is outside the Levi block"
                        )
        varied.append(linalgq.commutator(y, f.residues[j]))
    total = linalgq.zeros(n)
    for m in varied:
        total = linalgq.mat_add(total, m)
    return LogHiggsField(
        points=f.points,
        residues=tuple(varied),
        group=f.group,
        theta_data=None,
        regular_at_infinity=linalgq.is_zero_matrix(total),
    )


def nilpotent_exp(y: Matrix) -> Matrix:
    """Exact exponential of a nilpotent matrix (finite polynomial sum)."""
    n = len(y)
    power = linalgq.identity(n)
    out = linalgq.identity(n)
    fact = 1
    for k in range(1, n):
        power = linalgq.mat_mul(power, y)
        fact *= k
        out = linalgq.mat_add(out, linalgq.mat_scale(power, Fraction(1, fact)))
    check = linalgq.mat_mul(power, y)
    if not linalgq.is_zero_matrix(check):
        raise GroupError("matrix is not nilpotent; exact exponential unavailable")
    return out


# ---------------------------------------------------------------------------
# Leaves, ranks and the quotient diagram
# ---------------------------------------------------------------------------


def _algebra_for(m: MomentValue) -> LiePoissonAlgebra:
    sites = []
    for j, site in enumerate(m.sites):
        datum = m.data[j] if m.data is not None else None
        if datum is None:
            sites.append(full_site(len(site)))
        else:
            sites.append(levi_site(datum))
    return _assemble(sites)


def bivector_rank_at(
    xi: MomentValue, alg: Optional[LiePoissonAlgebra] = None
) -> int:
    """Rank of the Poisson bivector at the point: dimension of its leaf."""
    alg = alg if alg is not None else _algebra_for(xi)
    size = alg.gen_count
    pi = linalgq.zeros(size)
    for j, site in enumerate(alg.sites):
        offset = alg.offsets[j]
        values = xi.sites[j]
        for (a, b), row in site.bracket_table.items():
            acc = Fraction(0)
            for c, coeff in row:
                p, q = site.entries[c]
                acc += coeff * values[p][q]
            pi[offset + a][offset + b] = acc
    return linalgq.rank(pi)


@dataclass(frozen=True)
class LeafDescriptor:
    site_invariants: Tuple[Tuple[Fraction, ...], ...]
    bivector_rank: int

    def to_json_dict(self) -> dict:
        return {
            "site_invariants": [
                [str(v) for v in site] for site in self.site_invariants
            ],
            "bivector_rank": self.bivector_rank,
        }


def leaf_invariants(
    xi: MomentValue, alg: Optional[LiePoissonAlgebra] = None
) -> LeafDescriptor:
    """Conjugation-invariant coordinates of the leaf through the point."""
    invs = tuple(
        tuple(linalgq.invariant_values(site)) for site in xi.sites
    )
    return LeafDescriptor(
        site_invariants=invs,
        bivector_rank=bivector_rank_at(xi, alg),
    )


@dataclass(frozen=True)
class DiagramRow:
    point: int
    degree: int
    residue_route: Fraction
    moment_route: Fraction

    @property
    def equal(self) -> bool:
        return self.residue_route == self.moment_route


@dataclass(frozen=True)
class DiagramReport:
    rows: Tuple[DiagramRow, ...]

    @property
    def all_equal(self) -> bool:
        return all(r.equal for r in self.rows)

    def to_json_dict(self) -> dict:
        return {
            "all_equal": self.all_equal,
            "rows": [
                {
                    "point": r.point,
                    "degree": r.degree,
                    "residue_route": str(r.residue_route),
                    "moment_route": str(r.moment_route),
                    "equal": r.equal,
                }
                for r in self.rows
            ],
        }


def quotient_diagram_check(
    f: LogHiggsField, data: Optional[Sequence[Optional[ParahoricDatum]]] = None
) -> DiagramReport:
    """Compare two routes to the invariant values over the divisor.

    Route one evaluates each invariant section of the field at a marked
    point in the polar frame (a limit on the polynomial side); route two
    applies the same invariant to that point's coresidue.  The two are
    computed independently and compared exactly.
    """
    mv = moment_map(f, data)
    degrees = higgs.invariant_degrees(f)
    rows = []
    for j in range(f.site_count):
        site_vals = linalgq.invariant_values(mv.sites[j])
        for i in degrees:
            rows.append(
                DiagramRow(
                    point=j,
                    degree=i,
                    residue_route=higgs.residue_of_invariant(f, j, i),
                    moment_route=site_vals[i - 1],
                )
            )
    return DiagramReport(rows=tuple(rows))


def nilpotent_vanishing_check(x: Matrix) -> bool:
    """True for nilpotent input, in which case every nonconstant invariant
    value is asserted to vanish; False otherwise, with no assertion."""
    n = len(x)
    power = linalgq.copy(x)
    for _ in range(n - 1):
        power = linalgq.mat_mul(power, x)
    if not linalgq.is_zero_matrix(power):
        return False
    assert all(v == 0 for v in linalgq.invariant_values(x))
    return True

"""Canonical spanning monomials of the graded relatively-free algebras.

For each grading and characteristic this module enumerates the canonical
S1/S2-shaped monomials (a polynomial part times an ascending chain of
commutators in distinct variables, S2 carrying exactly one mixed [z,y]
commutator), counts them combinatorially, evaluates the printed closed-form
counters for reconciliation, builds growth tables, and detects the growth
degree (the empirical Gelfand-Kirillov dimension) by finite differences.

The deg_k grading admits several readings of the bound on the z polynomial
part; see EK_BOUNDS.  The default "derived" reading is the one reconciled
against the evaluation-rank oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Dict, List, Optional, Tuple

from .scalar import FieldSpec, Scalar
from .grassmann import GradingSpec
from .freealg import (
    FreePoly,
    MultiDegree,
    Variable,
    commutator,
    commutator_chain,
    y,
    z,
)

#: Readings of the admissibility rule for the deg_k grading.
#:
#:   derived:    reconciled against the evaluation-rank oracle.  For a fixed
#:               y-side (chain letters and shape) the z-side structures on the
#:               z-multiset M (a polynomial part plus [z,z]-chains, plus the
#:               mixed commutator letter for S2) satisfy one independent linear
#:               relation per submultiset of M of size k+2-2*cy (S1) resp.
#:               k+1-2*cy (S2), cy = number of pure-y commutators; the count
#:               is therefore max(0, #structures - #relations).  Caps:
#:               cy <= floor(k/2) for S1 and cy <= floor((k-1)/2) for S2.
#:   degree-cap:       per-monomial bound z-poly-degree <= k - cy with
#:                     cy <= floor(k/2); chain letters uncharged
#:   degree-cap-chain: as "degree-cap" but chain z-letters charged too
EK_BOUNDS = ("derived", "degree-cap", "degree-cap-chain")


def comb0(a: int, b: int) -> int:
    """Binomial with the convention C(a,b) = 0 for a < 0, b < 0 or b > a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def kappa(n: int, j: int, k: int) -> int:
    """Degree-n monomials in k commuting variables, every exponent < j."""
    if n < 0:
        return 0
    total = 0
    for s in range(0, n // j + 1):
        r = n - s * j
        total += (-1) ** s * comb0(k, s) * comb0(k + r - 1, r)
    return total


def _n_compositions(d: int, m: int) -> int:
    """Compositions of d into m nonnegative parts."""
    if d < 0:
        return 0
    if m == 0:
        return 1 if d == 0 else 0
    return comb(d + m - 1, m - 1)


def _n_bounded_compositions(d: int, m: int, bound: int) -> int:
    """Compositions of d into m parts, each part < bound."""
    if d < 0:
        return 0
    if m == 0:
        return 1 if d == 0 else 0
    return kappa(d, bound, m)


@dataclass(frozen=True)
class CanonicalMonomial:
    """Descriptor of one canonical spanning monomial.

    The word shape is  y^alpha z^beta [z,z]... ([z,y]) [y,y]... with all
    chain indices strictly ascending and distinct; ``mixed`` is present
    exactly for the S2 shape.
    """

    y_exponents: Tuple[int, ...]
    z_exponents: Tuple[int, ...]
    z_chain: Tuple[int, ...] = ()
    mixed: Optional[Tuple[int, int]] = None
    y_chain: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.z_chain) % 2 or len(self.y_chain) % 2:
            raise ValueError("chains must have even length")
        if list(self.z_chain) != sorted(set(self.z_chain)):
            raise ValueError("z-chain indices must be strictly ascending")
        if list(self.y_chain) != sorted(set(self.y_chain)):
            raise ValueError("y-chain indices must be strictly ascending")
        if self.mixed is not None:
            zs, yt = self.mixed
            if self.z_chain and zs <= max(self.z_chain):
                raise ValueError("mixed z index must extend the ascending z-chain")
            if self.y_chain and yt >= min(self.y_chain):
                raise ValueError("mixed y index must precede the ascending y-chain")

    @property
    def shape(self) -> str:
        return "S2" if self.mixed is not None else "S1"

    @property
    def m(self) -> int:
        return len(self.y_exponents)

    @property
    def total_degree(self) -> int:
        return (
            sum(self.y_exponents)
            + sum(self.z_exponents)
            + len(self.z_chain)
            + len(self.y_chain)
            + (2 if self.mixed is not None else 0)
        )

    @property
    def pure_y_commutators(self) -> int:
        return len(self.y_chain) // 2

    def multidegree(self) -> MultiDegree:
        ye = list(self.y_exponents)
        ze = list(self.z_exponents)
        for i in self.z_chain:
            ze[i - 1] += 1
        for i in self.y_chain:
            ye[i - 1] += 1
        if self.mixed is not None:
            ze[self.mixed[0] - 1] += 1
            ye[self.mixed[1] - 1] += 1
        return MultiDegree(tuple(ye), tuple(ze))

    def sort_key(self):
        return (
            self.y_exponents,
            self.z_exponents,
            self.z_chain,
            self.mixed or (),
            self.y_chain,
        )

    def to_freepoly(self, field: FieldSpec) -> FreePoly:
        word: List[Variable] = []
        for i, e in enumerate(self.y_exponents, start=1):
            word.extend([y(i)] * e)
        for i, e in enumerate(self.z_exponents, start=1):
            word.extend([z(i)] * e)
        poly = FreePoly.from_word(field, word)
        poly = poly.mul(commutator_chain(field, [z(i) for i in self.z_chain]))
        if self.mixed is not None:
            zs, yt = self.mixed
            poly = poly.mul(commutator(FreePoly.var(field, z(zs)), FreePoly.var(field, y(yt))))
        poly = poly.mul(commutator_chain(field, [y(i) for i in self.y_chain]))
        return poly

    def to_dict(self) -> dict:
        return {
            "shape": self.shape,
            "y_exponents": list(self.y_exponents),
            "z_exponents": list(self.z_exponents),
            "z_chain": list(self.z_chain),
            "mixed": list(self.mixed) if self.mixed else None,
            "y_chain": list(self.y_chain),
        }


def _admissible(
    g: GradingSpec,
    field: FieldSpec,
    s2: bool,
    dz: int,
    za: int,
    yb: int,
    ek_bound: str,
) -> bool:
    """Grading constraints on (z-poly-degree dz, z-letters za, y-letters yb).

    Used for the kstar and inf gradings and for the alternative deg_k
    readings; the default deg_k reading is handled by the relation count.
    """
    if g.kind == "kstar":
        return dz + za <= g.k
    if g.kind == "inf":
        return True
    # deg_k grading; cy = pure-y commutators
    cy = yb // 2
    if ek_bound == "degree-cap":
        return cy <= g.k // 2 and dz <= g.k - cy
    if ek_bound == "degree-cap-chain":
        return cy <= g.k // 2 and dz + za <= g.k - cy
    raise ValueError(f"unknown ek bound {ek_bound!r}; options: {EK_BOUNDS}")


def _n_submultisets(exps: Tuple[int, ...], size: int) -> int:
    """Submultisets of the multiset with the given multiplicities and size."""
    ways = [1] + [0] * size
    for e in exps:
        new = [0] * (size + 1)
        for have in range(size + 1):
            if not ways[have]:
                continue
            for take in range(0, min(e, size - have) + 1):
                new[have + take] += ways[have]
        ways = new
    return ways[size]


def _ek_z_structures(
    z_exponents: Tuple[int, ...], s2: bool, p: int, k: int
) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """All (s_z, beta) z-side structures for the deg_k grading, sorted.

    s_z is the ascending tuple of commutator z-letters (odd size for S2,
    even for S1, pairs read off consecutively), beta the polynomial part.
    In characteristic p the parts of beta are bounded by p.
    """
    support = [i for i, e in enumerate(z_exponents, start=1) if e >= 1]
    out = []
    for za in range(1 if s2 else 0, len(support) + 1, 2):
        for s_z in itertools.combinations(support, za):
            beta = list(z_exponents)
            for i in s_z:
                beta[i - 1] -= 1
            if p and any(b >= p for b in beta):
                continue
            out.append((s_z, tuple(beta)))
    # structures with fewer/lower chain letters first: relations eliminate
    # the high-polynomial-degree representatives first
    out.sort(key=lambda sb: (len(sb[0]), sb[0]))
    return out


def _ek_y_caps(k: int, s2: bool) -> int:
    """Largest admissible number of pure-y commutators for the deg_k grading."""
    return (k - 1) // 2 if s2 else k // 2


def _ek_relation_size(k: int, s2: bool, cy: int) -> int:
    return (k + 1 if s2 else k + 2) - 2 * cy


def spanning_for_multidegree(
    g: GradingSpec,
    field: FieldSpec,
    d: MultiDegree,
    ek_bound: str = "derived",
) -> List[CanonicalMonomial]:
    """All canonical monomials with the given multidegree, sorted."""
    m = d.m
    p = field.characteristic
    z_support = [i for i in range(1, m + 1) if d.z_exponents[i - 1] >= 1]
    y_support = [i for i in range(1, m + 1) if d.y_exponents[i - 1] >= 1]
    out: List[CanonicalMonomial] = []

    def build(s_z, beta, s_y) -> CanonicalMonomial:
        alpha = list(d.y_exponents)
        for i in s_y:
            alpha[i - 1] -= 1
        if len(s_z) % 2:
            return CanonicalMonomial(
                tuple(alpha),
                tuple(beta),
                z_chain=s_z[:-1],
                mixed=(s_z[-1], s_y[0]),
                y_chain=s_y[1:],
            )
        return CanonicalMonomial(tuple(alpha), tuple(beta), z_chain=s_z, y_chain=s_y)

    if g.kind == "k" and ek_bound == "derived":
        for yb in range(0, len(y_support) + 1):
            s2 = bool(yb & 1)
            cy = (yb - 1) // 2 if s2 else yb // 2
            if cy > _ek_y_caps(g.k, s2):
                continue
            structures = _ek_z_structures(d.z_exponents, s2, p, g.k)
            rels = _n_submultisets(d.z_exponents, _ek_relation_size(g.k, s2, cy))
            kept = structures[min(rels, len(structures)):]
            for s_z, beta in kept:
                for s_y in itertools.combinations(y_support, yb):
                    out.append(build(s_z, beta, s_y))
        out.sort(key=CanonicalMonomial.sort_key)
        return out

    for za in range(0, len(z_support) + 1):
        for yb in range(0, len(y_support) + 1):
            if (za ^ yb) & 1:
                continue
            s2 = bool(za & 1)
            for s_z in itertools.combinations(z_support, za):
                beta = list(d.z_exponents)
                for i in s_z:
                    beta[i - 1] -= 1
                if p and any(b >= p for b in beta):
                    continue
                dz = sum(beta)
                if not _admissible(g, field, s2, dz, za, yb, ek_bound):
                    continue
                for s_y in itertools.combinations(y_support, yb):
                    out.append(build(tuple(s_z), tuple(beta), s_y))
    out.sort(key=CanonicalMonomial.sort_key)
    return out


def _count_ek_multidegree(g: GradingSpec, field: FieldSpec, d: MultiDegree) -> int:
    """Canonical-monomial count of one multidegree under the deg_k grading."""
    p = field.characteristic
    k = g.k
    n_y_support = sum(1 for e in d.y_exponents if e >= 1)
    total = 0
    for yb in range(0, n_y_support + 1):
        s2 = bool(yb & 1)
        cy = (yb - 1) // 2 if s2 else yb // 2
        if cy > _ek_y_caps(k, s2):
            continue
        n_struct = len(_ek_z_structures(d.z_exponents, s2, p, k))
        rels = _n_submultisets(d.z_exponents, _ek_relation_size(k, s2, cy))
        total += comb(n_y_support, yb) * max(0, n_struct - rels)
    return total


def _multidegrees(m: int, t: int):
    for split in itertools.combinations(range(t + 2 * m - 1), 2 * m - 1):
        # stars and bars over 2m slots
        prev = -1
        parts = []
        for s in split + (t + 2 * m - 1,):
            parts.append(s - prev - 1)
            prev = s
        yield MultiDegree(tuple(parts[:m]), tuple(parts[m:]))


def enumerate_spanning(
    g: GradingSpec,
    field: FieldSpec,
    m: int,
    t: int,
    ek_bound: str = "derived",
) -> List[CanonicalMonomial]:
    """All canonical monomials of total degree t, in the documented order."""
    out: List[CanonicalMonomial] = []
    for d in _multidegrees(m, t):
        out.extend(spanning_for_multidegree(g, field, d, ek_bound))
    out.sort(key=CanonicalMonomial.sort_key)
    return out


def count_spanning(
    g: GradingSpec,
    field: FieldSpec,
    m: int,
    t: int,
    ek_bound: str = "derived",
) -> int:
    """Number of canonical monomials of total degree t (no materialization).

    Agrees with ``len(enumerate_spanning(...))`` exactly: the chain letters
    are chosen as subsets and the polynomial part as (bounded) compositions.
    """
    p = field.characteristic
    if g.kind == "k" and ek_bound == "derived":
        return sum(
            _count_ek_multidegree(g, field, d) for d in _multidegrees(m, t)
        )
    total = 0
    for za in range(0, m + 1):
        for yb in range(0, m + 1):
            if (za ^ yb) & 1:
                continue
            s2 = bool(za & 1)
            rem = t - za - yb
            if rem < 0:
                continue
            chains = comb(m, za) * comb(m, yb)
            if not chains:
                continue
            for dz in range(0, rem + 1):
                if not _admissible(g, field, s2, dz, za, yb, ek_bound):
                    continue
                nz = (
                    _n_bounded_compositions(dz, m, p)
                    if p
                    else _n_compositions(dz, m)
                )
                total += chains * nz * _n_compositions(rem - dz, m)
    return total


# ---------------------------------------------------------------------------
# Printed closed-form counters (diagnostic; reconciled via compare_counts)
# ---------------------------------------------------------------------------


def _s1_factor(m: int, x: int) -> int:
    return sum(
        comb(m, 2 * l) * comb0(x - 2 * l + m - 1, m - 1) for l in range(m // 2 + 1)
    )


def _s2_factor(m: int, x: int) -> int:
    return sum(
        comb0(m - 1, 2 * l) * comb0(x - 2 * l + m - 2, m - 1)
        for l in range(m // 2 + 1)
    )


def _s1_factor_kappa(m: int, x: int, p: int) -> int:
    return sum(comb(m, 2 * l) * kappa(x - 2 * l, p, m) for l in range(m // 2 + 1))


def _s2_factor_kappa(m: int, x: int, p: int) -> int:
    return sum(
        comb0(m - 1, 2 * l) * kappa(x - 2 * l - 1, p, m) for l in range(m // 2 + 1)
    )


def closed_form_count(g: GradingSpec, field: FieldSpec, m: int, t: int) -> int:
    """Value of the printed per-degree counter for (grading, characteristic).

    Families: (a+b) for characteristic 0 (or p > k), (c+d) with the bounded
    exponent counter substituted otherwise.  Implemented exactly as printed
    under the C(a,b) = 0 convention; never used as ground truth.
    """
    p = field.characteristic
    if g.kind == "kstar":
        k = g.k
        t2_range = range(0, min(t, k) + 1)
        if p and p <= k:
            a = sum(_s1_factor(m, t - t2) * _s1_factor_kappa(m, t2, p) for t2 in t2_range)
            b = sum(
                m * m * _s2_factor(m, t - t2) * _s2_factor_kappa(m, t2, p)
                for t2 in t2_range
            )
        else:
            a = sum(_s1_factor(m, t - t2) * _s1_factor(m, t2) for t2 in t2_range)
            b = sum(
                m * m * _s2_factor(m, t - t2) * _s2_factor(m, t2) for t2 in t2_range
            )
        return a + b
    if g.kind == "inf":
        t2_range = range(0, t + 1)
        if p:
            a = sum(_s1_factor(m, t - t2) * _s1_factor_kappa(m, t2, p) for t2 in t2_range)
            b = sum(
                m * m * _s2_factor(m, t - t2) * _s2_factor_kappa(m, t2, p)
                for t2 in t2_range
            )
        else:
            a = sum(_s1_factor(m, t - t2) * _s1_factor(m, t2) for t2 in t2_range)
            b = sum(
                m * m * _s2_factor(m, t - t2) * _s2_factor(m, t2) for t2 in t2_range
            )
        return a + b
    # deg_k grading
    k = g.k
    use_kappa = bool(p and p <= k)

    def z_factor(t2: int, s: int) -> int:
        if use_kappa:
            return kappa(t2 - 2 * s, p, m - 1)
        return comb0(t2 - 2 * s + m - 1, m - 1)

    total = 0
    for t2 in range(0, t + 1):
        t1 = t - t2
        for l in range(0, k + 1):
            for s in range(0, m // 2 + 1):
                if t2 - 2 * s > k - l:
                    continue
                if l % 2 == 0:
                    total += (
                        comb(m, l)
                        * comb0(t1 - l + m - 1, m - 1)
                        * comb(m, 2 * s)
                        * z_factor(t2, s)
                    )
                else:
                    total += (
                        comb0(m, l - 1)
                        * m
                        * (m - l + 1)
                        * comb0(t1 - l + m - 1, m - 1)
                        * comb0(m - 1, 2 * s)
                        * z_factor(t2, s)
                    )
    return total


# ---------------------------------------------------------------------------
# Growth tables, reconciliation, Hilbert coefficients, GK detection
# ---------------------------------------------------------------------------


@dataclass
class GrowthTable:
    """Per-total-degree and cumulative dimension counts."""

    grading: str
    characteristic: int
    m: int
    ek_bound: str
    per_degree: Dict[int, int] = dc_field(default_factory=dict)
    cumulative: Dict[int, int] = dc_field(default_factory=dict)

    def degrees(self) -> List[int]:
        return sorted(self.per_degree)

    def to_dict(self) -> dict:
        return {
            "grading": self.grading,
            "char": self.characteristic,
            "m": self.m,
            "ek_bound": self.ek_bound,
            "per_degree": {str(t): c for t, c in sorted(self.per_degree.items())},
            "cumulative": {str(t): c for t, c in sorted(self.cumulative.items())},
        }


def growth_table(
    g: GradingSpec,
    field: FieldSpec,
    m: int,
    t_max: int,
    ek_bound: str = "derived",
) -> GrowthTable:
    table = GrowthTable(g.label(), field.characteristic, m, ek_bound)
    running = 0
    for t in range(0, t_max + 1):
        c = count_spanning(g, field, m, t, ek_bound)
        running += c
        table.per_degree[t] = c
        table.cumulative[t] = running
    return table


@dataclass
class CompareRow:
    t: int
    enumerator: int
    closed_form: int

    @property
    def delta(self) -> int:
        return self.closed_form - self.enumerator

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "enumerator": self.enumerator,
            "closed_form": self.closed_form,
            "delta": self.delta,
        }


@dataclass
class CompareReport:
    """Reconciliation of the printed counters against the enumerator.

    The enumerator column is ground truth; nonzero deltas are reported and
    never silently patched.
    """

    grading: str
    characteristic: int
    m: int
    ek_bound: str
    rows: List[CompareRow] = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "grading": self.grading,
            "char": self.characteristic,
            "m": self.m,
            "ek_bound": self.ek_bound,
            "rows": [r.to_dict() for r in self.rows],
        }


def compare_counts(
    g: GradingSpec,
    field: FieldSpec,
    m: int,
    t_max: int,
    ek_bound: str = "derived",
) -> CompareReport:
    report = CompareReport(g.label(), field.characteristic, m, ek_bound)
    for t in range(0, t_max + 1):
        report.rows.append(
            CompareRow(
                t,
                count_spanning(g, field, m, t, ek_bound),
                closed_form_count(g, field, m, t),
            )
        )
    return report


def _finite_diff(seq: List[int]) -> List[int]:
    return [b - a for a, b in zip(seq, seq[1:])]


def gk_estimate(table: GrowthTable, window: int) -> Tuple[int, str]:
    """Degree of the cumulative growth sequence by successive differences.

    Returns (degree, confidence); confidence is LOW when the differences do
    not become identically zero over the tail window.
    """
    vals = [table.cumulative[t] for t in table.degrees()]
    if window > len(vals):
        raise ValueError(f"window {window} exceeds table size {len(vals)}")
    for order in range(0, window):
        cur = vals
        for _ in range(order):
            cur = _finite_diff(cur)
        tail = cur[-window:]
        if len(tail) >= 3 and all(v == 0 for v in tail):
            return max(order - 1, 0), "HIGH"
    return window - 1, "LOW"


def hilbert_coeffs(
    g: GradingSpec,
    field: FieldSpec,
    m: int,
    t_max: int,
    mode: str = "univariate",
    ek_bound: str = "derived",
):
    """Hilbert coefficients by total degree, or the full multidegree table."""
    if mode == "univariate":
        return compare_counts(g, field, m, t_max, ek_bound).rows
    if mode == "multivariate":
        out: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = {}
        for t in range(0, t_max + 1):
            for d in _multidegrees(m, t):
                cnt = len(spanning_for_multidegree(g, field, d, ek_bound))
                if cnt:
                    out[(d.y_exponents, d.z_exponents)] = cnt
        return out
    raise ValueError("mode must be 'univariate' or 'multivariate'")

"""Evaluation-rank ground truth for component dimensions.

Words of a fixed multidegree are evaluated at graded points of E(n); the
exact rank of the resulting matrix is a lower bound for the dimension of the
corresponding component of the relatively-free algebra, while the canonical
spanning set gives the upper bound.  When the two meet the value is
certified.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .scalar import FieldSpec, Scalar
from .grassmann import (
    GradingSpec,
    GrassmannElement,
    TruncationError,
    random_homogeneous,
)
from .freealg import (
    FreePoly,
    MultiDegree,
    ParityError,
    Variable,
    Word,
    evaluate,
    y,
    z,
)
from .spanning import CanonicalMonomial, spanning_for_multidegree

# prescreen modulus for characteristic 0: rank mod q never exceeds the exact
# rank, so matching the spanning upper bound certifies without big fractions
_PRESCREEN_Q = (1 << 61) - 1


@dataclass
class EvaluationPoint:
    """Graded substitution: every image is parity-homogeneous."""

    assignment: Dict[Variable, GrassmannElement]
    provenance: str

    def to_dict(self) -> dict:
        return {
            "provenance": self.provenance,
            "assignment": {v.name: e.to_dict() for v, e in sorted(self.assignment.items())},
        }


@dataclass
class EvalMatrix:
    """Columns: one sparse vector per input polynomial.

    Row keys are (point index, basis monomial bitmask) pairs.
    """

    columns: List[Dict[Tuple[int, int], Scalar]]
    field: FieldSpec
    n_points: int

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    def row_keys(self) -> List[Tuple[int, int]]:
        keys = set()
        for col in self.columns:
            keys.update(col)
        return sorted(keys)


def words_of_multidegree(d: MultiDegree) -> List[Word]:
    """All distinct arrangements of the multiset of letters given by d."""
    letters: List[Variable] = []
    for i, e in enumerate(d.y_exponents, start=1):
        letters.extend([y(i)] * e)
    for i, e in enumerate(d.z_exponents, start=1):
        letters.extend([z(i)] * e)
    out: List[Word] = []

    def rec(remaining: List[Variable], prefix: Tuple[Variable, ...]):
        if not remaining:
            out.append(prefix)
            return
        seen = set()
        for idx, v in enumerate(remaining):
            if v in seen:
                continue
            seen.add(v)
            rec(remaining[:idx] + remaining[idx + 1 :], prefix + (v,))

    rec(sorted(letters), ())
    return out


class _GenPool:
    """Allocator of fresh generator indices per parity; cycles when exhausted."""

    def __init__(self, g: GradingSpec, n: int):
        self.odd = [i for i in range(1, n + 1) if g.generator_parity(i) == 1]
        self.even = [i for i in range(1, n + 1) if g.generator_parity(i) == 0]
        self._oc = 0
        self._ec = 0

    def take(self, par: int) -> int:
        pool = self.odd if par else self.even
        if not pool:
            raise TruncationError(f"no parity-{par} generators in the pool")
        if par:
            i = pool[self._oc % len(pool)]
            self._oc += 1
        else:
            i = pool[self._ec % len(pool)]
            self._ec += 1
        return i

    def take_pair0(self) -> Tuple[int, int]:
        """Two generators of equal parity (a length-2 parity-0 monomial)."""
        avail_even = len(self.even) - self._ec
        avail_odd = len(self.odd) - self._oc
        if avail_even >= 2 and avail_even >= avail_odd:
            return self.take(0), self.take(0)
        if len(self.odd) >= 2:
            return self.take(1), self.take(1)
        return self.take(0), self.take(0)


def required_truncation(m: int, d: MultiDegree, g: GradingSpec) -> int:
    """Conservative truncation needed by the structured substitutions."""
    extra = g.k if g.kind != "inf" else 0
    return 2 * d.total + 2 * m + extra + 4


def _structured_point(
    g: GradingSpec,
    field: FieldSpec,
    d: MultiDegree,
    n: int,
    central_var: Optional[Variable] = None,
    unit_shift: bool = False,
    rng: Optional[random.Random] = None,
    extra_pairs: int = 0,
) -> EvaluationPoint:
    pool = _GenPool(g, n)

    def cf() -> Scalar:
        if rng is None:
            return Scalar.one(field)
        if field.is_modular:
            return Scalar(field, rng.randrange(1, field.characteristic))
        return Scalar(field, rng.choice([-3, -2, -1, 1, 2, 3]))
    assignment: Dict[Variable, GrassmannElement] = {}
    active: List[Tuple[Variable, int]] = []
    for i, e in enumerate(d.z_exponents, start=1):
        if e:
            active.append((z(i), e))
    for i, e in enumerate(d.y_exponents, start=1):
        if e:
            active.append((y(i), e))
    mixed_parities = bool(g.odd_mask(n)) and g.odd_mask(n) != (1 << n) - 1
    for v, deg in active:
        elem = GrassmannElement.zero(field, n)
        central_only = v == central_var
        if v.parity == 1:
            # leading length-1 term plus central length-2 terms; both kinds
            # are needed so powers and commutators are simultaneously nonzero
            pairs = (deg if central_only else max(deg - 1, 1)) + extra_pairs
            if not central_only:
                elem = elem.add(
                    GrassmannElement.monomial(field, n, (pool.take(1),)).scale(cf())
                )
            for _ in range(pairs):
                a, b = pool.take(1), pool.take(0) if mixed_parities else pool.take(1)
                if a == b:
                    continue
                elem = elem.add(
                    GrassmannElement.monomial(field, n, tuple(sorted((a, b)))).scale(cf())
                )
        else:
            pairs = (deg if central_only else max(deg - 1, 1)) + extra_pairs
            if unit_shift:
                elem = elem.add(GrassmannElement.one(field, n).scale(cf()))
                pairs = deg + extra_pairs
            elif not central_only and mixed_parities:
                elem = elem.add(
                    GrassmannElement.monomial(field, n, (pool.take(0),)).scale(cf())
                )
            for _ in range(pairs):
                pair = tuple(sorted(pool.take_pair0()))
                if pair[0] == pair[1]:
                    continue
                elem = elem.add(GrassmannElement.monomial(field, n, pair).scale(cf()))
        img = elem.project(g, v.parity)
        if img.is_zero():
            img = elem
        assignment[v] = img
    tag = "STRUCTURED"
    if central_var is not None:
        tag = f"STRUCTURED(central={central_var.name})"
    if unit_shift:
        tag = "STRUCTURED(unit-shift)"
    return EvaluationPoint(assignment, tag)


def _random_point(
    g: GradingSpec,
    field: FieldSpec,
    d: MultiDegree,
    n: int,
    rng_seed: str,
) -> EvaluationPoint:
    rng = random.Random(rng_seed)
    odd_gens = [i for i in range(1, n + 1) if g.generator_parity(i) == 1]
    even_gens = [i for i in range(1, n + 1) if g.generator_parity(i) == 0]

    def coef() -> Scalar:
        if field.is_modular:
            return Scalar(field, rng.randrange(1, field.characteristic))
        return Scalar(field, rng.choice([-3, -2, -1, 1, 2, 3]))

    def mixing_terms(eps: int) -> GrassmannElement:
        # terms whose monomial length parity differs from the grading parity;
        # uniform sampling rarely produces them when one parity class is small
        out = GrassmannElement.zero(field, n)
        if not odd_gens or not even_gens:
            return out
        if eps == 1:
            pair = (rng.choice(odd_gens), rng.choice(even_gens))
            out = out.add(GrassmannElement.monomial(field, n, sorted(set(pair))).scale(coef()))
            out = out.add(
                GrassmannElement.monomial(field, n, (rng.choice(odd_gens),)).scale(coef())
            )
        else:
            out = out.add(
                GrassmannElement.monomial(field, n, (rng.choice(even_gens),)).scale(coef())
            )
            a, b = rng.sample(odd_gens, 2) if len(odd_gens) >= 2 else (None, None)
            if a is not None:
                out = out.add(GrassmannElement.monomial(field, n, sorted((a, b))).scale(coef()))
        return out.project(g, eps)

    assignment: Dict[Variable, GrassmannElement] = {}
    for kind, exps in (("y", d.y_exponents), ("z", d.z_exponents)):
        for i, e in enumerate(exps, start=1):
            if not e:
                continue
            v = Variable(kind, i)
            # higher-degree variables need more terms for their powers to
            # survive: each term of e.g. z^3 uses three distinct summands
            density = min(rng.randint(2, 4) + e, 9)
            img = random_homogeneous(g, v.parity, n, density, rng, field)
            assignment[v] = img.add(mixing_terms(v.parity))
    return EvaluationPoint(assignment, f"RANDOM({rng_seed})")


def make_points(
    g: GradingSpec,
    field: FieldSpec,
    m: int,
    d: MultiDegree,
    n: int,
    count: int,
    seed,
) -> List[EvaluationPoint]:
    """Structured proof-shaped points first, then reproducible random points."""
    need = required_truncation(m, d, g)
    if n < need:
        raise TruncationError(f"truncation {n} too small; need n >= {need}")
    points: List[EvaluationPoint] = []
    points.append(_structured_point(g, field, d, n))
    if any(d.y_exponents):
        points.append(_structured_point(g, field, d, n, unit_shift=True))
    for kind, exps in (("z", d.z_exponents), ("y", d.y_exponents)):
        for i, e in enumerate(exps, start=1):
            if e:
                points.append(
                    _structured_point(g, field, d, n, central_var=Variable(kind, i))
                )
    # structured shapes with generic coefficients: the shape guarantees the
    # degeneracy pattern, the coefficients supply genericity
    for j in range(3):
        rng = random.Random(f"{seed}:coef:{j}")
        points.append(
            _structured_point(g, field, d, n, rng=rng, extra_pairs=1)
        )
        if any(d.y_exponents):
            points.append(
                _structured_point(g, field, d, n, unit_shift=True, rng=rng, extra_pairs=1)
            )
    idx = 0
    while len(points) < count:
        points.append(_random_point(g, field, d, n, f"{seed}:{idx}"))
        idx += 1
    return points[:count] if count < len(points) else points


def _eval_words_at_point(
    words: Sequence[Word],
    point: EvaluationPoint,
    g: GradingSpec,
    field: FieldSpec,
    n: int,
) -> List[GrassmannElement]:
    for v, elem in point.assignment.items():
        if not elem.is_homogeneous(g, v.parity):
            raise ParityError(f"image of {v.name} not homogeneous")
    one = GrassmannElement.one(field, n)
    cache: Dict[Word, GrassmannElement] = {(): one}
    out = []
    for word in words:
        img = None
        for cut in range(len(word), -1, -1):
            img = cache.get(word[:cut])
            if img is not None:
                break
        for j in range(cut, len(word)):
            img = img.mul(point.assignment[word[j]])
            cache[word[: j + 1]] = img
        out.append(img)
    return out


def evaluation_matrix(
    polys: Sequence[FreePoly],
    points: Sequence[EvaluationPoint],
    g: GradingSpec,
    field: FieldSpec,
    n: int,
) -> EvalMatrix:
    """Column j stacks the coefficient vectors of evaluate(polys[j], point)."""
    columns: List[Dict[Tuple[int, int], Scalar]] = [dict() for _ in polys]
    for pi, point in enumerate(points):
        for j, poly in enumerate(polys):
            if poly.is_zero():
                continue
            assignment = dict(point.assignment)
            for v in poly.variables():
                if v not in assignment:
                    # inactive variable for this multidegree; harmless default
                    assignment[v] = GrassmannElement.zero(field, n)
            value = evaluate(poly, assignment, g) if assignment else None
            if value is None:
                continue
            for bits, coef in value.terms.items():
                columns[j][(pi, bits)] = coef
    return EvalMatrix(columns, field, len(points))


# ---------------------------------------------------------------------------
# Exact rank
# ---------------------------------------------------------------------------


def _int_columns(mx: EvalMatrix) -> Tuple[List[Dict[Tuple[int, int], int]], List[Fraction]]:
    """Clear denominators column by column (preserves rank; scales kernel)."""
    cols = []
    scales = []
    for col in mx.columns:
        if mx.field.is_modular:
            cols.append({k: v.value for k, v in col.items()})
            scales.append(Fraction(1))
            continue
        denom = 1
        for v in col.values():
            denom = lcm(denom, v.value.denominator)
        cols.append({k: int(v.value * denom) for k, v in col.items()})
        scales.append(Fraction(denom))
    return cols, scales


def _eliminate(
    cols: List[Dict],
    modulus: Optional[int],
    want_kernel: bool = False,
):
    """Sparse column echelon; fraction-free over the integers, else mod p.

    Returns (rank, kernel_tag) where kernel_tag expresses a vanishing
    combination of the *scaled* input columns, or None.
    """
    pivots: Dict[Tuple[int, int], Tuple[Dict, int, Dict]] = {}
    rank = 0
    for j, col in enumerate(cols):
        work = dict(col)
        tag = {j: 1}
        while work:
            lead = min(work)
            lead_val = work[lead]
            hit = pivots.get(lead)
            if hit is None:
                pivots[lead] = (work, lead_val, tag)
                rank += 1
                break
            pcol, pval, ptag = hit
            if modulus is None:
                # fraction-free: work <- pval*work - lead_val*pcol
                new = {}
                for key in set(work) | set(pcol):
                    val = pval * work.get(key, 0) - lead_val * pcol.get(key, 0)
                    if val:
                        new[key] = val
                new_tag = {k: pval * v for k, v in tag.items()}
                for k, v in ptag.items():
                    nv = new_tag.get(k, 0) - lead_val * v
                    if nv:
                        new_tag[k] = nv
                    else:
                        new_tag.pop(k, None)
                g_ = 0
                for val in new.values():
                    g_ = gcd(g_, val)
                for val in new_tag.values():
                    g_ = gcd(g_, val)
                if g_ > 1:
                    new = {k: v // g_ for k, v in new.items()}
                    new_tag = {k: v // g_ for k, v in new_tag.items()}
                work, tag = new, new_tag
            else:
                factor = lead_val * pow(pval, -1, modulus) % modulus
                new = {}
                for key in set(work) | set(pcol):
                    val = (work.get(key, 0) - factor * pcol.get(key, 0)) % modulus
                    if val:
                        new[key] = val
                new_tag = dict(tag)
                for k, v in ptag.items():
                    nv = (new_tag.get(k, 0) - factor * v) % modulus
                    if nv:
                        new_tag[k] = nv
                    else:
                        new_tag.pop(k, None)
                work, tag = new, new_tag
        else:
            if want_kernel:
                return rank, tag
    return rank, None


def rank(mx: EvalMatrix) -> int:
    """Exact rank: fraction-free integer elimination over Q, modular over F_p."""
    cols, _ = _int_columns(mx)
    modulus = mx.field.characteristic if mx.field.is_modular else None
    r, _ = _eliminate(cols, modulus)
    return r


def _rank_mod(mx: EvalMatrix, q: int) -> int:
    cols, _ = _int_columns(mx)
    cols = [{k: v % q for k, v in col.items() if v % q} for col in cols]
    r, _ = _eliminate(cols, q)
    return r


@dataclass
class ComponentResult:
    grading: str
    characteristic: int
    m: int
    multidegree: dict
    lower: int
    upper: int
    exact: bool
    n: int
    points: int
    seed: object

    def to_dict(self) -> dict:
        return {
            "grading": self.grading,
            "char": self.characteristic,
            "m": self.m,
            "multidegree": self.multidegree,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "n": self.n,
            "points": self.points,
            "seed": self.seed,
        }


def component_dimension(
    g: GradingSpec,
    field: FieldSpec,
    m: int,
    d: MultiDegree,
    n: int,
    points_budget: int = 24,
    seed=0,
    ek_bound: str = "derived",
) -> ComponentResult:
    """Certify the dimension of one multihomogeneous component.

    lower = exact rank of the evaluations of all words of multidegree d;
    upper = size of the canonical spanning set; exact iff they meet.
    """
    upper = len(spanning_for_multidegree(g, field, d, ek_bound))
    words = words_of_multidegree(d)
    polys = [FreePoly.from_word(field, w) for w in words]
    modulus = field.characteristic if field.is_modular else None

    columns: List[Dict[Tuple[int, int], Scalar]] = [dict() for _ in polys]
    points = make_points(g, field, m, d, n, points_budget, seed)
    n_structured = sum(1 for p in points if p.provenance.startswith("STRUCTURED"))
    lower = 0
    used = 0
    stable = 0
    last_rank = -1
    for pi, point in enumerate(points):
        images = _eval_words_at_point(words, point, g, field, n)
        for j, img in enumerate(images):
            for bits, coef in img.terms.items():
                columns[j][(pi, bits)] = coef
        used = pi + 1
        mx = EvalMatrix([dict(c) for c in columns], field, used)
        if modulus is None:
            r = _rank_mod(mx, _PRESCREEN_Q)
            if r == upper:
                lower = r
                break
        else:
            r, _ = _eliminate(_int_columns(mx)[0], modulus)
            if r == upper:
                lower = r
                break
        if r == last_rank:
            stable += 1
        else:
            stable = 0
            last_rank = r
        lower = r
        # never conclude before several random points have been seen
        if stable >= 4 and used >= n_structured + 6:
            break
    if lower != upper and modulus is None:
        # prescreen did not reach the upper bound: report the exact rank
        mx = EvalMatrix([dict(c) for c in columns], field, used)
        lower = rank(mx)
    return ComponentResult(
        g.label(),
        field.characteristic,
        m,
        d.to_dict(),
        lower,
        upper,
        lower == upper,
        n,
        used,
        seed,
    )


@dataclass
class IndependenceVerdict:
    independent: bool
    rank: int
    size: int
    kernel: Optional[List[str]] = None

    def to_dict(self) -> dict:
        out = {
            "verdict": "INDEPENDENT" if self.independent else "DEPENDENT",
            "rank": self.rank,
            "size": self.size,
        }
        if self.kernel is not None:
            out["kernel"] = self.kernel
        return out


def _normalize_kernel(
    tag: Dict[int, int], scales: List[Fraction], size: int, field: FieldSpec
) -> List[str]:
    """Kernel of the original columns, first nonzero entry normalized to 1."""
    if field.is_modular:
        p = field.characteristic
        vec = [tag.get(j, 0) % p for j in range(size)]
        first = next(v for v in vec if v)
        inv = pow(first, -1, p)
        return [str(v * inv % p) for v in vec]
    vec = [Fraction(tag.get(j, 0)) * scales[j] for j in range(size)]
    first = next(v for v in vec if v)
    return [str(v / first) for v in vec]


def independence_check(
    monos: Sequence[CanonicalMonomial],
    g: GradingSpec,
    field: FieldSpec,
    n: int,
    points_budget: int = 24,
    seed=0,
) -> IndependenceVerdict:
    """INDEPENDENT iff the evaluation matrix of the monomials has full rank;
    otherwise a canonical kernel vector is returned as the certificate."""
    if not monos:
        return IndependenceVerdict(True, 0, 0)
    m = monos[0].m
    envelope = MultiDegree(
        tuple(
            max(mono.multidegree().y_exponents[i] for mono in monos) for i in range(m)
        ),
        tuple(
            max(mono.multidegree().z_exponents[i] for mono in monos) for i in range(m)
        ),
    )
    polys = [mono.to_freepoly(field) for mono in monos]
    points = make_points(g, field, m, envelope, n, points_budget, seed)
    mx = evaluation_matrix(polys, points, g, field, n)
    cols, scales = _int_columns(mx)
    modulus = field.characteristic if field.is_modular else None
    r, tag = _eliminate(cols, modulus, want_kernel=True)
    if tag is None:
        return IndependenceVerdict(True, r, len(monos))
    return IndependenceVerdict(
        False, r, len(monos), _normalize_kernel(tag, scales, len(monos), field)
    )

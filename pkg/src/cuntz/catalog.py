"""Evaluation of the bivariant invariants W(A,B) and WW(A,B) over the
algebra catalog.

The evaluator is a terminating rewrite system on queries.  Rules are grouped
in three classes: base facts that read off a value directly, structural
isomorphisms (recovery of the univariant semigroup, matrix and limit
stability, additivity, absorption of a strongly self-absorbing tensor
factor), and last-resort absorption of a bare strongly self-absorbing first
argument.  A lower class always fires before a higher one; inside a class a
fixed priority breaks ties, and the confluence explorer checks that any
class-respecting order of the tied rules reaches the same canonical value.
Every step is recorded with the name of the theorem that justifies it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Set, Tuple, Union

from .algebra import (
    COMPLEX,
    AlgebraExpr,
    CX,
    Complex,
    DirectSum,
    FinDim,
    JiangSu,
    KirchbergSimple,
    Mat,
    MatAmp,
    MatInf,
    Stabilize,
    Tensor,
    UHF,
    absorbs,
    finite_type_compact,
    finite_type_strict,
    is_exact,
    is_strongly_self_absorbing,
    kills_compact_targets,
    kills_findim_targets,
    normalize,
    simple_summand_count,
    to_text,
)
from .extnat import ExtNat
from .multiplicity import MultiplicityFunction, Space, SpaceMismatch, space_to_json
from .supernatural import sn_eq, sn_format, sn_parse
from .supernatural import _is_prime

DYADIC_SUPERNATURAL = sn_parse("2:inf")


class SemigroupValue:
    """Base class for canonical values; variants below."""

    __slots__ = ()


@dataclass(frozen=True)
class NatSG(SemigroupValue):
    pass


@dataclass(frozen=True)
class ExtNatSG(SemigroupValue):
    pass


@dataclass(frozen=True)
class ZeroSG(SemigroupValue):
    pass


@dataclass(frozen=True)
class TwoPointSG(SemigroupValue):
    pass


@dataclass(frozen=True)
class CarSG(SemigroupValue):
    """Dyadic compact values together with a soft positive part."""


@dataclass(frozen=True)
class MfSG(SemigroupValue):
    space: Space


@dataclass(frozen=True)
class MfiSG(SemigroupValue):
    space: Space


@dataclass(frozen=True)
class IdealLatticeSG(SemigroupValue):
    """Subsets of k simple summands under intersection."""

    summands: int

    def elements(self) -> Tuple[frozenset, ...]:
        base = list(range(1, self.summands + 1))
        subsets = []
        for mask in range(1 << self.summands):
            subsets.append(frozenset(base[i] for i in range(self.summands) if mask >> i & 1))
        return tuple(sorted(subsets, key=lambda s: (len(s), sorted(s))))

    @staticmethod
    def add(x: frozenset, y: frozenset) -> frozenset:
        return x & y

    @property
    def identity(self) -> frozenset:
        return frozenset(range(1, self.summands + 1))


@dataclass(frozen=True)
class DirectSumSG(SemigroupValue):
    summands: Tuple[SemigroupValue, ...]

    def __post_init__(self):
        if not self.summands:
            raise ValueError("a direct sum value needs summands")


@dataclass(frozen=True)
class WOfSG(SemigroupValue):
    algebra: AlgebraExpr


@dataclass(frozen=True)
class CuOfSG(SemigroupValue):
    algebra: AlgebraExpr


@dataclass(frozen=True)
class UnknownSG(SemigroupValue):
    query: str


def _space_text(space: Space) -> str:
    if space.kind == "discrete":
        return ",".join(space.points)
    return "[0,1]"


def value_text(v: SemigroupValue) -> str:
    if isinstance(v, NatSG):
        return "ℕ₀"
    if isinstance(v, ExtNatSG):
        return "ℕ₀∪{∞}"
    if isinstance(v, ZeroSG):
        return "{0}"
    if isinstance(v, TwoPointSG):
        return "{0,∞}"
    if isinstance(v, CarSG):
        return "ℕ₀[1/2]⊔(0,∞)"
    if isinstance(v, MfSG):
        return f"Mf({_space_text(v.space)})"
    if isinstance(v, MfiSG):
        return f"Mf_i({_space_text(v.space)})"
    if isinstance(v, IdealLatticeSG):
        return (
            f"ideal lattice on {v.summands} summands "
            f"({2 ** v.summands} elements, + = ∩)"
        )
    if isinstance(v, DirectSumSG):
        return "⊕[" + ", ".join(value_text(s) for s in v.summands) + "]"
    if isinstance(v, WOfSG):
        return f"W({to_text(v.algebra)})"
    if isinstance(v, CuOfSG):
        return f"Cu({to_text(v.algebra)})"
    if isinstance(v, UnknownSG):
        return f"Unknown[{v.query}]"
    raise TypeError(f"not a semigroup value: {v!r}")


def value_to_json(v: SemigroupValue) -> dict:
    if isinstance(v, NatSG):
        return {"kind": "Nat"}
    if isinstance(v, ExtNatSG):
        return {"kind": "ExtNat"}
    if isinstance(v, ZeroSG):
        return {"kind": "Zero"}
    if isinstance(v, TwoPointSG):
        return {"kind": "TwoPoint"}
    if isinstance(v, CarSG):
        return {"kind": "Car"}
    if isinstance(v, MfSG):
        return {"kind": "Mf", "space": space_to_json(v.space)}
    if isinstance(v, MfiSG):
        return {"kind": "Mfi", "space": space_to_json(v.space)}
    if isinstance(v, IdealLatticeSG):
        return {"kind": "IdealLattice", "summands": v.summands}
    if isinstance(v, DirectSumSG):
        return {"kind": "DirectSum", "summands": [value_to_json(s) for s in v.summands]}
    if isinstance(v, WOfSG):
        return {"kind": "WOf", "algebra": to_text(v.algebra)}
    if isinstance(v, CuOfSG):
        return {"kind": "CuOf", "algebra": to_text(v.algebra)}
    if isinstance(v, UnknownSG):
        return {"kind": "Unknown", "query": v.query}
    raise TypeError(f"not a semigroup value: {v!r}")


def direct_sum_value(parts: Sequence[SemigroupValue]) -> SemigroupValue:
    """Flatten nested sums and order summands canonically."""
    flat: List[SemigroupValue] = []
    for p in parts:
        if isinstance(p, DirectSumSG):
            flat.extend(p.summands)
        else:
            flat.append(p)
    flat.sort(key=lambda v: (type(v).__name__, value_text(v)))
    return DirectSumSG(tuple(flat))


def has_unknown(v: SemigroupValue) -> bool:
    if isinstance(v, UnknownSG):
        return True
    if isinstance(v, DirectSumSG):
        return any(has_unknown(s) for s in v.summands)
    return False


# ---------------------------------------------------------------------------
# Queries and the trace.

@dataclass(frozen=True)
class Query:
    variant: str  # "W" | "WW" | "Wof" | "Cuof"
    a: AlgebraExpr
    b: Optional[AlgebraExpr] = None


def query_text(q: Query) -> str:
    if q.variant == "W":
        return f"W({to_text(q.a)}, {to_text(q.b)})"
    if q.variant == "WW":
        return f"WW({to_text(q.a)}, {to_text(q.b)})"
    if q.variant == "Wof":
        return f"W({to_text(q.a)})"
    if q.variant == "Cuof":
        return f"Cu({to_text(q.a)})"
    raise ValueError(f"unknown query variant {q.variant!r}")


@dataclass(frozen=True)
class TraceStep:
    rule: str
    anchor: str
    before: str
    after: str

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "anchor": self.anchor,
            "before": self.before,
            "after": self.after,
        }


RewriteTrace = List[TraceStep]


@dataclass(frozen=True)
class _Outcome:
    kind: str  # "value" | "query" | "split"
    value: Optional[SemigroupValue] = None
    query: Optional[Query] = None
    parts: Tuple[Query, ...] = ()


def _val(v: SemigroupValue) -> _Outcome:
    return _Outcome("value", value=v)


def _next(q: Query) -> _Outcome:
    return _Outcome("query", query=q)


def _split(parts: Sequence[Query]) -> _Outcome:
    return _Outcome("split", parts=tuple(parts))


# ---------------------------------------------------------------------------
# The rules.

def _is_dyadic_uhf(e: AlgebraExpr) -> bool:
    return isinstance(e, UHF) and sn_eq(e.number, DYADIC_SUPERNATURAL)


def _r_zero(q: Query) -> Optional[_Outcome]:
    if q.variant == "W":
        if finite_type_strict(q.b) and kills_findim_targets(q.a):
            return _val(ZeroSG())
        if finite_type_compact(q.b) and kills_compact_targets(q.a):
            return _val(ZeroSG())
    if q.variant == "WW":
        if finite_type_compact(q.b) and kills_compact_targets(q.a):
            return _val(ZeroSG())
    return None


def _r_car(q: Query) -> Optional[_Outcome]:
    if q.variant == "W" and _is_dyadic_uhf(q.a) and _is_dyadic_uhf(q.b):
        return _val(CarSG())
    return None


def _r_kirchberg(q: Query) -> Optional[_Outcome]:
    if q.variant == "WW" and isinstance(q.b, KirchbergSimple) and is_exact(q.a):
        k = simple_summand_count(q.a)
        return _val(TwoPointSG() if k == 1 else IdealLatticeSG(k))
    return None


def _r_homology(q: Query) -> Optional[_Outcome]:
    if isinstance(q.a, CX) and isinstance(q.b, Complex):
        space = Space.discrete(q.a.points)
        if q.variant == "WW":
            return _val(MfSG(space))
        if q.variant == "W":
            return _val(MfiSG(space))
    return None


def _r_base_mono(q: Query) -> Optional[_Outcome]:
    if q.variant == "Wof":
        if isinstance(q.a, Complex):
            return _val(NatSG())
        if _is_dyadic_uhf(q.a):
            return _val(CarSG())
        if isinstance(q.a, CX):
            return _val(MfiSG(Space.discrete(q.a.points)))
    if q.variant == "Cuof":
        if isinstance(q.a, Complex):
            return _val(ExtNatSG())
        if isinstance(q.a, CX):
            return _val(MfSG(Space.discrete(q.a.points)))
    return None


def _r_recover(q: Query) -> Optional[_Outcome]:
    if q.variant == "W" and isinstance(q.a, Complex):
        return _next(Query("Wof", q.b))
    return None


def _r_bridge(q: Query) -> Optional[_Outcome]:
    if q.variant == "WW":
        return _next(Query("W", q.a, Stabilize(q.b)))
    return None


def _r_target_strip(q: Query) -> Optional[_Outcome]:
    if q.variant == "W":
        if isinstance(q.b, Mat):
            return _next(Query("W", q.a, COMPLEX))
        if isinstance(q.b, (MatAmp, MatInf)):
            return _next(Query("W", q.a, q.b.inner))
    if q.variant in ("Wof", "Cuof"):
        if isinstance(q.a, Mat):
            return _next(Query(q.variant, COMPLEX))
        if isinstance(q.a, (MatAmp, MatInf)):
            return _next(Query(q.variant, q.a.inner))
    return None


def _r_stability(q: Query) -> Optional[_Outcome]:
    if q.variant == "W":
        if isinstance(q.a, MatInf):
            return _next(Query("W", q.a.inner, q.b))
        if isinstance(q.a, Stabilize) and isinstance(q.b, Stabilize):
            return _next(Query("W", q.a.inner, q.b))
    if q.variant == "Wof" and isinstance(q.a, Stabilize):
        return _next(Query("Cuof", q.a.inner))
    if q.variant == "Cuof" and isinstance(q.a, Stabilize):
        return _next(Query("Cuof", q.a.inner))
    return None


def _r_domain_strip(q: Query) -> Optional[_Outcome]:
    if q.variant == "W":
        if isinstance(q.a, Mat):
            return _next(Query("W", COMPLEX, q.b))
        if isinstance(q.a, MatAmp):
            return _next(Query("W", q.a.inner, q.b))
    return None


def _summand_exprs(e: AlgebraExpr) -> Optional[List[AlgebraExpr]]:
    if isinstance(e, DirectSum):
        return [e.left, e.right]
    if isinstance(e, FinDim) and len(e.sizes) >= 2:
        return [Mat(n) for n in e.sizes]
    if isinstance(e, CX):
        return [COMPLEX for _ in e.points]
    return None


def _r_additivity(q: Query) -> Optional[_Outcome]:
    if q.variant == "W":
        parts = _summand_exprs(q.a)
        if parts is not None:
            if len(parts) == 1:
                return _next(Query("W", parts[0], q.b))
            return _split([Query("W", p, q.b) for p in parts])
        parts = _summand_exprs(q.b)
        if parts is not None:
            if len(parts) == 1:
                return _next(Query("W", q.a, parts[0]))
            return _split([Query("W", q.a, p) for p in parts])
    if q.variant in ("Wof", "Cuof"):
        parts = _summand_exprs(q.a)
        if parts is not None:
            if len(parts) == 1:
                return _next(Query(q.variant, parts[0]))
            return _split([Query(q.variant, p) for p in parts])
    return None


def _ssa_factors(e: AlgebraExpr) -> List[AlgebraExpr]:
    out: List[AlgebraExpr] = []

    def walk(x: AlgebraExpr):
        if isinstance(x, Tensor):
            walk(x.left)
            walk(x.right)
        elif isinstance(x, (Stabilize, MatInf, MatAmp)):
            walk(x.inner)
        elif is_strongly_self_absorbing(x):
            out.append(x)

    walk(e)
    return out


def _contains_factor(e: AlgebraExpr, d: AlgebraExpr) -> bool:
    return d in _ssa_factors(e) if is_strongly_self_absorbing(d) else False


def _remove_factor(e: AlgebraExpr, d: AlgebraExpr) -> AlgebraExpr:
    if e == d:
        return COMPLEX
    if isinstance(e, Tensor):
        if _contains_factor(e.left, d):
            return Tensor(_remove_factor(e.left, d), e.right)
        return Tensor(e.left, _remove_factor(e.right, d))
    if isinstance(e, MatAmp):
        return MatAmp(e.n, _remove_factor(e.inner, d))
    if isinstance(e, Stabilize):
        return Stabilize(_remove_factor(e.inner, d))
    if isinstance(e, MatInf):
        return MatInf(_remove_factor(e.inner, d))
    raise ValueError("factor not present")


def _r_absorption(q: Query) -> Optional[_Outcome]:
    if q.variant != "W" or is_strongly_self_absorbing(q.a):
        return None
    for d in _ssa_factors(q.a):
        if absorbs(q.b, d):
            return _next(Query("W", _remove_factor(q.a, d), q.b))
    return None


def _r_bare_absorption(q: Query) -> Optional[_Outcome]:
    if q.variant == "W" and is_strongly_self_absorbing(q.a) and absorbs(q.b, q.a):
        return _next(Query("W", COMPLEX, q.b))
    return None


@dataclass(frozen=True)
class _Rule:
    name: str
    anchor: str
    klass: int
    fn: Callable[[Query], Optional[_Outcome]]


RULES: Tuple[_Rule, ...] = (
    _Rule("R6-zero", "finite-dimensional representation obstruction", 0, _r_zero),
    _Rule("R6-CAR", "CAR algebra self-pairing", 0, _r_car),
    _Rule(
        "R6-Kirchberg",
        "bivariant ideal lattice theorem for Kirchberg algebras",
        0,
        _r_kirchberg,
    ),
    _Rule(
        "R6-homology",
        "multiplicity function description of Cuntz homology",
        0,
        _r_homology,
    ),
    _Rule("R6-base", "base Cuntz semigroup values", 0, _r_base_mono),
    _Rule("R1", "recovery of the Cuntz semigroup from the bivariant theory", 1, _r_recover),
    _Rule("R2", "matrix stability of the target", 1, _r_target_strip),
    _Rule("R3", "stability isomorphism", 1, _r_stability),
    _Rule("R3-bridge", "stabilized definition of the bivariant semigroup", 1, _r_bridge),
    _Rule("R2-domain", "matrix stability of the domain", 1, _r_domain_strip),
    _Rule("R4", "additivity of the bivariant Cuntz semigroup", 1, _r_additivity),
    _Rule("R5", "strongly self-absorbing absorption theorem", 1, _r_absorption),
    _Rule("R7", "absorption of a strongly self-absorbing factor", 2, _r_bare_absorption),
)


def _normalize_query(q: Query) -> Query:
    a = normalize(q.a)
    b = normalize(q.b) if q.b is not None else None
    return Query(q.variant, a, b)


def _matches(q: Query) -> List[Tuple[_Rule, _Outcome]]:
    """Matching rules of the lowest matching class, in priority order."""
    found: List[Tuple[_Rule, _Outcome]] = []
    best = None
    for rule in RULES:
        outcome = rule.fn(q)
        if outcome is None:
            continue
        if best is None or rule.klass < best:
            best = rule.klass
            found = [(rule, outcome)]
        elif rule.klass == best:
            found.append((rule, outcome))
    return found


def _terminal_value(q: Query) -> SemigroupValue:
    if q.variant == "Wof":
        return WOfSG(q.a)
    if q.variant == "Cuof":
        return CuOfSG(q.a)
    return UnknownSG(query_text(q))


_MAX_STEPS = 64


def _evaluate(q: Query, record_normalize: bool) -> Tuple[SemigroupValue, RewriteTrace]:
    trace: RewriteTrace = []
    nq = _normalize_query(q)
    if record_normalize and query_text(nq) != query_text(q):
        trace.append(
            TraceStep("N", "canonical presentation", query_text(q), query_text(nq))
        )
    q = nq
    for _ in range(_MAX_STEPS):
        matched = _matches(q)
        if not matched:
            return _terminal_value(q), trace
        rule, outcome = matched[0]
        before = query_text(q)
        if outcome.kind == "value":
            trace.append(TraceStep(rule.name, rule.anchor, before, value_text(outcome.value)))
            return outcome.value, trace
        if outcome.kind == "query":
            q = _normalize_query(outcome.query)
            trace.append(TraceStep(rule.name, rule.anchor, before, query_text(q)))
            continue
        parts = [_normalize_query(p) for p in outcome.parts]
        trace.append(
            TraceStep(
                rule.name,
                rule.anchor,
                before,
                " (+) ".join(query_text(p) for p in parts),
            )
        )
        values = []
        for p in parts:
            v, t = _evaluate(p, False)
            trace.extend(t)
            values.append(v)
        return direct_sum_value(values), trace
    raise RuntimeError(f"rewriting did not terminate on {query_text(q)}")


def eval_W(a: AlgebraExpr, b: AlgebraExpr) -> Tuple[SemigroupValue, RewriteTrace]:
    """Evaluate W(a,b) to a canonical value with a rule-by-rule trace."""
    return _evaluate(Query("W", a, b), True)


def eval_WW(a: AlgebraExpr, b: AlgebraExpr) -> Tuple[SemigroupValue, RewriteTrace]:
    """Evaluate WW(a,b) = W(a (x) K, b (x) K) to a canonical value."""
    return _evaluate(Query("WW", a, b), True)


def explore_values(q: Query, depth: int = 8) -> Set[SemigroupValue]:
    """All values reachable by class-respecting rule orders.

    The evaluator picks the highest-priority rule among those of the lowest
    matching class; here every rule of that class is tried.  A singleton
    result certifies confluence for the query.
    """
    q = _normalize_query(q)
    if depth < 0:
        return {UnknownSG("depth limit exceeded")}
    matched = _matches(q)
    if not matched:
        return {_terminal_value(q)}
    out: Set[SemigroupValue] = set()
    for rule, outcome in matched:
        if outcome.kind == "value":
            out.add(outcome.value)
        elif outcome.kind == "query":
            out |= explore_values(outcome.query, depth - 1)
        else:
            part_sets = [explore_values(p, depth - 1) for p in outcome.parts]
            for combo in _cartesian(*part_sets):
                out.add(direct_sum_value(list(combo)))
    return out


# ---------------------------------------------------------------------------
# Cuntz homology and the composition product.

def eval_cuntz_homology(space: Space, variant: str = "WW") -> SemigroupValue:
    """WW(C(X), C) as multiplicity functions, W(C(X), C) as the finitely
    supported ones; the interval model only carries the WW value."""
    if variant == "WW":
        return MfSG(space)
    if variant == "W":
        if space.kind != "discrete":
            raise ValueError("the finitely supported value needs a discrete space")
        return MfiSG(space)
    raise ValueError(f"unknown variant {variant!r}")


def compose_product(rank: Mapping[str, int], nu: MultiplicityFunction) -> ExtNat:
    """Pairing of a rank function with a multiplicity function over a shared
    finite discrete space: sum of pointwise products in the extended
    naturals."""
    if nu.space.kind != "discrete":
        raise SpaceMismatch("the composition product needs a discrete space")
    labels = set(nu.space.points)
    total = ExtNat(0)
    for point, r in rank.items():
        if point not in labels:
            raise SpaceMismatch(f"rank function mentions unknown point {point!r}")
        if not isinstance(r, int) or r < 0:
            raise ValueError("ranks must be non-negative integers")
        total = total + ExtNat(r) * nu.value_at(point)
    return total


# ---------------------------------------------------------------------------
# Classification and scales.

@dataclass(frozen=True)
class ClassificationVerdict:
    verdict: str  # Isomorphic | NotIsomorphic | Undecided
    certificate: str

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "certificate": self.certificate}


def _uhf_witness_prime(p, q) -> Tuple[int, ExtNat, ExtNat]:
    candidates = sorted({prime for prime, _ in p.exponents} | {prime for prime, _ in q.exponents})
    if p.universal or q.universal:
        n = 2
        while n in candidates or not _is_prime(n):
            n += 1
        candidates.append(n)
    for prime in sorted(candidates):
        if p.exponent(prime) != q.exponent(prime):
            return prime, p.exponent(prime), q.exponent(prime)
    raise AssertionError("no witness prime for equal supernatural numbers")


def _classify_cx(a: CX, b: CX) -> ClassificationVerdict:
    from .multiplicity import recover_from_functions, unit_fragment

    rec_a = recover_from_functions(unit_fragment(Space.discrete(a.points)))
    rec_b = recover_from_functions(unit_fragment(Space.discrete(b.points)))
    if rec_a.point_count == rec_b.point_count and len(rec_a.closed_sets) == len(
        rec_b.closed_sets
    ):
        return ClassificationVerdict(
            "Isomorphic",
            f"reconstructed spaces are homeomorphic: {rec_a.point_count} points, "
            f"closed-set lattices of size {len(rec_a.closed_sets)} coincide",
        )
    return ClassificationVerdict(
        "NotIsomorphic",
        "minimal-element counts differ in the reconstructed monoids: "
        f"{rec_a.point_count} != {rec_b.point_count}",
    )


def classify(a: AlgebraExpr, b: AlgebraExpr) -> ClassificationVerdict:
    """Isomorphism verdicts on the decidable catalog fragment.

    Matrix algebras compare by dimension, UHF algebras by their supernatural
    numbers, finite discrete function algebras through reconstruction of the
    space from the multiplicity monoid; all other pairs are Undecided.
    """
    a = normalize(a)
    b = normalize(b)
    if isinstance(a, Complex):
        a = Mat(1)
    if isinstance(b, Complex):
        b = Mat(1)
    if isinstance(a, Mat) and isinstance(b, Mat):
        if a.n == b.n:
            return ClassificationVerdict(
                "Isomorphic", f"matrix dimensions agree: {a.n} = {b.n}"
            )
        return ClassificationVerdict(
            "NotIsomorphic", f"matrix dimensions differ: {a.n} != {b.n}"
        )
    if isinstance(a, UHF) and isinstance(b, UHF):
        if sn_eq(a.number, b.number):
            return ClassificationVerdict(
                "Isomorphic",
                f"equal supernatural numbers: {sn_format(a.number)}",
            )
        prime, ea, eb = _uhf_witness_prime(a.number, b.number)
        return ClassificationVerdict(
            "NotIsomorphic",
            f"prime {prime} exponent mismatch: {ea} vs {eb}",
        )
    if isinstance(a, CX) and isinstance(b, CX):
        return _classify_cx(a, b)
    return ClassificationVerdict("Undecided", "outside the decidable catalog fragment")


class NotDecidable(Exception):
    """Scale analysis is restricted to matrix pairs."""


@dataclass(frozen=True)
class ScaleNote:
    n: int
    m: int
    forward_scale: Tuple[int, ...]
    backward_scale: Tuple[int, ...]
    invertible: bool
    strictly_invertible: bool

    def text(self) -> str:
        fwd = "{" + ",".join(str(x) for x in self.forward_scale) + "}"
        bwd = "{" + ",".join(str(x) for x in self.backward_scale) + "}"
        lines = [
            f"WW(M({self.n}),M({self.m})) has carrier ℕ₀∪{{∞}}.",
            f"Scale from M({self.n}) to M({self.m}): {fwd} "
            f"(rank budget floor({self.m}/{self.n}) = {self.m // self.n}).",
            f"Scale from M({self.m}) to M({self.n}): {bwd} "
            f"(rank budget floor({self.n}/{self.m}) = {self.n // self.m}).",
            "An invertible class exists: 1 composes with 1 to the identity class "
            "in both orders.",
        ]
        if self.strictly_invertible:
            lines.append(
                "The class 1 lies in both scales, so it is strictly invertible "
                "and the algebras are isomorphic."
            )
        else:
            missing = "forward" if 1 not in self.forward_scale else "backward"
            lines.append(
                f"No strictly invertible class: 1 is missing from the {missing} "
                "scale, which forces n = m for isomorphism."
            )
        return " ".join(lines)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "forward_scale": list(self.forward_scale),
            "backward_scale": list(self.backward_scale),
            "invertible": self.invertible,
            "strictly_invertible": self.strictly_invertible,
            "note": self.text(),
        }


def scale_membership_note(a: AlgebraExpr, b: AlgebraExpr) -> ScaleNote:
    """Which classes of WW(M_n, M_m) come from maps M_n -> M_m.

    The scale is the rank budget of unital-size bookkeeping, {0..floor(m/n)};
    strict invertibility needs 1 in the scales of both directions.
    """
    a = normalize(a)
    b = normalize(b)
    if isinstance(a, Complex):
        a = Mat(1)
    if isinstance(b, Complex):
        b = Mat(1)
    if not (isinstance(a, Mat) and isinstance(b, Mat)):
        raise NotDecidable("scale analysis is only implemented for matrix pairs")
    n, m = a.n, b.n
    forward = tuple(range(0, m // n + 1))
    backward = tuple(range(0, n // m + 1))
    return ScaleNote(
        n=n,
        m=m,
        forward_scale=forward,
        backward_scale=backward,
        invertible=True,
        strictly_invertible=(n == m),
    )

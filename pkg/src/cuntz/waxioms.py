"""Finite-fragment checkers for the axioms of ordered monoids carrying an
auxiliary relation, and for the morphisms between them.

A fragment is a finite window into a (possibly infinite) positively ordered
monoid together with an auxiliary relation ``aux`` refining the order.  The
four object axioms are checked by enumeration over the fragment:

  O1  every lower set {x : aux(x, a)} is upward directed and contains a
      cofinal aux-increasing sequence;
  O2  that lower set admits a supremum, which is a itself;
  O3  aux is additive: aux(a', a) and aux(b', b) imply aux(a'+b', a+b);
  O4  lower sets are additively cofinal: every c with aux(c, a+b) is
      dominated by a sum a'+b' of elements aux-below a and b.

On a finite carrier a cofinal aux-increasing sequence exists iff the lower
set has a greatest element t with aux(t, t) (the sequence is eventually
constant), which is what O1 tests.  For O2 the supremum oracle may be
partial; when a is not aux-compact (aux(a, a) fails) the fragment can only
exhibit a cofinal piece of the true lower set, so any upper bound <= a is
accepted, while aux-compact elements must realise the supremum exactly.

The two morphism axioms:

  M1  continuity: aux(t, f(s)) in the target lifts to some aux(s', s) in
      the source with t <= f(s');
  M2  f preserves aux.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, TypeVar

from .extnat import INF, ExtNat, way_below

T = TypeVar("T")


class FragmentNotClosed(Exception):
    """An addition or image escaped the fragment under test."""


@dataclass
class AxiomCheck:
    axiom: str
    passed: bool
    witness: Optional[str] = None

    def __str__(self) -> str:
        tail = "" if self.passed else f"  counterexample: {self.witness}"
        return f"{self.axiom}: {'pass' if self.passed else 'FAIL'}{tail}"


@dataclass
class Fragment:
    """A finite carrier with its monoid, order, and auxiliary oracles.

    ``sup`` receives the aux-lower set of an element (as a list) and returns
    its supremum in the ambient monoid, or None where it is undefined.
    """

    elements: Sequence[T]
    add: Callable[[T, T], T]
    zero: T
    leq: Callable[[T, T], bool]
    aux: Callable[[T, T], bool]
    sup: Callable[[Sequence[T]], Optional[T]]
    name: str = "fragment"
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {x: None for x in self.elements}

    def __contains__(self, x: T) -> bool:
        return x in self._index

    def checked_add(self, x: T, y: T) -> T:
        s = self.add(x, y)
        if s not in self:
            raise FragmentNotClosed(f"{x} + {y} = {s} escapes the fragment")
        return s

    def lower(self, a: T) -> List[T]:
        return [x for x in self.elements if self.aux(x, a)]


def check_wo_axioms(fragment: Fragment) -> List[AxiomCheck]:
    """Check the four object axioms on a fragment.

    Returns one AxiomCheck per axiom with a concrete counterexample on
    failure.  Raises FragmentNotClosed if a tested addition escapes.
    """
    elems = list(fragment.elements)
    leq, aux = fragment.leq, fragment.aux
    lowers = {a: fragment.lower(a) for a in elems}

    sums: dict = {}

    def cadd(x, y):
        key = (x, y)
        if key not in sums:
            sums[key] = fragment.checked_add(x, y)
        return sums[key]

    directed = AxiomCheck("O1", True)
    for a in elems:
        low = lowers[a]
        for x in low:
            for y in low:
                if not any(leq(x, z) and leq(y, z) for z in low):
                    directed = AxiomCheck(
                        "O1", False, f"lower set of {a} not directed at ({x}, {y})"
                    )
                    break
            if not directed.passed:
                break
        if not directed.passed:
            break
        top = _greatest(low, leq)
        if top is None or not aux(top, top):
            directed = AxiomCheck(
                "O1", False, f"lower set of {a} has no aux-compact greatest element"
            )
            break

    sup_ok = AxiomCheck("O2", True)
    for a in elems:
        low = lowers[a]
        s = fragment.sup(low)
        if s is None:
            sup_ok = AxiomCheck("O2", False, f"sup undefined on the lower set of {a}")
            break
        if not all(leq(x, s) for x in low) or not leq(s, a):
            sup_ok = AxiomCheck("O2", False, f"sup of lower set of {a} returned {s}")
            break
        if aux(a, a) and s != a:
            sup_ok = AxiomCheck(
                "O2", False, f"{a} is aux-compact but sup of its lower set is {s}"
            )
            break

    additive = AxiomCheck("O3", True)
    for a in elems:
        for b in elems:
            ab = cadd(a, b)
            for a1 in lowers[a]:
                for b1 in lowers[b]:
                    if not aux(cadd(a1, b1), ab):
                        additive = AxiomCheck(
                            "O3", False, f"aux({a1}+{b1}, {a}+{b}) fails"
                        )
                        break
                if not additive.passed:
                    break
            if not additive.passed:
                break
        if not additive.passed:
            break

    cofinal = AxiomCheck("O4", True)
    for a in elems:
        # Largest candidates first: a dominating split sum is usually found
        # on the first try, keeping the search near linear.
        rev_a = list(reversed(lowers[a]))
        for b in elems:
            ab = cadd(a, b)
            rev_b = list(reversed(lowers[b]))
            for c in lowers[ab]:
                if not any(
                    leq(c, cadd(a1, b1)) for a1 in rev_a for b1 in rev_b
                ):
                    cofinal = AxiomCheck(
                        "O4", False, f"{c} aux-below {a}+{b} but no dominating split sum"
                    )
                    break
            if not cofinal.passed:
                break
        if not cofinal.passed:
            break

    return [directed, sup_ok, additive, cofinal]


def check_wm_axioms(
    morphism: Callable[[T], T], source: Fragment, target: Fragment
) -> List[AxiomCheck]:
    """Check the two morphism axioms for a map between fragments.

    Raises FragmentNotClosed if an image falls outside the target fragment.
    """
    images = {}
    for s in source.elements:
        m = morphism(s)
        if m not in target:
            raise FragmentNotClosed(f"image {m} of {s} escapes the target fragment")
        images[s] = m

    continuity = AxiomCheck("M1", True)
    for s in source.elements:
        fs = images[s]
        for t in target.elements:
            if not target.aux(t, fs):
                continue
            if not any(
                source.aux(s1, s) and target.leq(t, images[s1])
                for s1 in source.elements
            ):
                continuity = AxiomCheck(
                    "M1", False, f"aux({t}, f({s})) has no lift below {s}"
                )
                break
        if not continuity.passed:
            break

    preserves = AxiomCheck("M2", True)
    for a in source.elements:
        for b in source.elements:
            if source.aux(a, b) and not target.aux(images[a], images[b]):
                preserves = AxiomCheck(
                    "M2", False, f"aux({a}, {b}) holds but aux(f({a}), f({b})) fails"
                )
                break
        if not preserves.passed:
            break

    return [continuity, preserves]


def _greatest(values: Sequence[T], leq) -> Optional[T]:
    for x in values:
        if all(leq(y, x) for y in values):
            return x
    return None


def extnat_fragment(
    bound: int, aux: str = "way-below", sup: str = "max"
) -> Fragment:
    """The fragment {0, ..., bound, inf} of ExtNat.

    Addition clamps finite sums at the bound so the fragment is closed;
    the clamped monoid is associative, commutative and order compatible.
    ``aux`` selects the auxiliary relation (``way-below`` or the full order
    ``leq``); ``sup`` selects the supremum oracle (``max``, or the partial
    ``finite-only`` oracle that is undefined on sets containing inf).
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    cap = ExtNat(bound)
    elements: List[ExtNat] = [ExtNat(k) for k in range(bound + 1)] + [INF]

    def add(x: ExtNat, y: ExtNat) -> ExtNat:
        s = x + y
        return s if not s.is_finite or s <= cap else cap

    if aux == "way-below":
        aux_fn = way_below
    elif aux == "leq":
        aux_fn = lambda x, y: x <= y
    else:
        raise ValueError(f"unknown auxiliary relation {aux!r}")

    def sup_max(values: Sequence[ExtNat]) -> Optional[ExtNat]:
        out = None
        for v in values:
            if out is None or out < v:
                out = v
        return out

    def sup_finite_only(values: Sequence[ExtNat]) -> Optional[ExtNat]:
        if any(not v.is_finite for v in values):
            return None
        return sup_max(values)

    if sup == "max":
        sup_fn = sup_max
    elif sup == "finite-only":
        sup_fn = sup_finite_only
    else:
        raise ValueError(f"unknown supremum oracle {sup!r}")

    return Fragment(
        elements=elements,
        add=add,
        zero=ExtNat(0),
        leq=lambda x, y: x <= y,
        aux=aux_fn,
        sup=sup_fn,
        name=f"extnat<=({bound})",
    )


def extnat_scaling(fragment: Fragment, k: int) -> Callable[[ExtNat], ExtNat]:
    """Multiplication by k on a clamped ExtNat fragment.

    Finite values map to min(k*x, bound); inf maps to inf.  For k >= 1 this
    is a monoid morphism of the clamped fragment.
    """
    if k < 1:
        raise ValueError("the scaling factor must be >= 1")
    cap = max((x for x in fragment.elements if x.is_finite), key=lambda v: v.finite_value)

    def scale(x: ExtNat) -> ExtNat:
        if not x.is_finite:
            return INF
        y = ExtNat(k * x.finite_value)
        return y if y <= cap else cap

    return scale

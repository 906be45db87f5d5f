"""Symbolic descriptors for the catalog of C*-algebras.

Expressions are finite trees: leaves name concrete algebras (scalars, matrix
algebras, finite-dimensional sums, continuous functions on a finite discrete
space, UHF algebras given by a supernatural number, the Jiang-Su algebra,
simple Kirchberg algebras, the compact operators) and nodes combine them by
tensor product, direct sum, stabilization, matrix amplification M_n(-) and
the algebraic limit M_inf(-).

The text syntax is

    C | M(n) | F(n1,...,nk) | CX(p1,...,pk) | UHF(2:inf,...) | CAR | Z | Q
      | O2 | Oinf | K | A (+) B | A (x) B | stab(A) | Minf(A)

with (x) binding tighter than (+) and both associating to the left.  CAR and
Q are sugar for UHF(2:inf) and UHF(Q).  ``normalize`` rewrites a tree to a
canonical form using only plain *-isomorphisms (matrix bookkeeping and
absorption of matrix factors into stabilization), never theorems about the
invariants themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from .supernatural import (
    Supernatural,
    sn_eq,
    sn_format,
    sn_is_infinite_type,
    sn_mul,
    sn_parse,
)


class AlgebraExpr:
    """Base class; concrete variants are the frozen dataclasses below."""

    __slots__ = ()


@dataclass(frozen=True)
class Complex(AlgebraExpr):
    pass


@dataclass(frozen=True)
class Mat(AlgebraExpr):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("matrix size must be >= 1")


@dataclass(frozen=True)
class FinDim(AlgebraExpr):
    sizes: Tuple[int, ...]

    def __post_init__(self):
        if not self.sizes or any(n < 1 for n in self.sizes):
            raise ValueError("finite-dimensional sums need sizes >= 1")


@dataclass(frozen=True)
class CX(AlgebraExpr):
    """Continuous functions on a finite discrete space with named points."""

    points: Tuple[str, ...]

    def __post_init__(self):
        if not self.points:
            raise ValueError("the space needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise ValueError("point labels must be distinct")


@dataclass(frozen=True)
class UHF(AlgebraExpr):
    number: Supernatural


@dataclass(frozen=True)
class JiangSu(AlgebraExpr):
    pass


@dataclass(frozen=True)
class KirchbergSimple(AlgebraExpr):
    name: str

    def __post_init__(self):
        if self.name not in ("O2", "Oinf", "other"):
            raise ValueError(f"unknown Kirchberg label {self.name!r}")


@dataclass(frozen=True)
class Compacts(AlgebraExpr):
    pass


@dataclass(frozen=True)
class Tensor(AlgebraExpr):
    left: AlgebraExpr
    right: AlgebraExpr


@dataclass(frozen=True)
class DirectSum(AlgebraExpr):
    left: AlgebraExpr
    right: AlgebraExpr


@dataclass(frozen=True)
class Stabilize(AlgebraExpr):
    inner: AlgebraExpr


@dataclass(frozen=True)
class MatAmp(AlgebraExpr):
    n: int
    inner: AlgebraExpr

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("amplification size must be >= 1")


@dataclass(frozen=True)
class MatInf(AlgebraExpr):
    inner: AlgebraExpr


COMPLEX = Complex()


class ExprSyntaxError(ValueError):
    """Parse failure, carrying the character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_OPERATORS = {"(+)": "OPLUS", "(x)": "OTIMES"}


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text[i : i + 3] in _OPERATORS:
            tokens.append((_OPERATORS[text[i : i + 3]], text[i : i + 3], i))
            i += 3
            continue
        if ch == "(":
            tokens.append(("LP", ch, i))
            i += 1
            continue
        if ch == ")":
            tokens.append(("RP", ch, i))
            i += 1
            continue
        if ch == ",":
            tokens.append(("COMMA", ch, i))
            i += 1
            continue
        if ch == ":":
            tokens.append(("COLON", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.pos]

    def next(self) -> Tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind:
            raise ExprSyntaxError(f"expected {kind}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> AlgebraExpr:
        expr = self.sum()
        tok = self.peek()
        if tok[0] != "EOF":
            raise ExprSyntaxError(f"trailing input {tok[1]!r}", tok[2])
        return expr

    def sum(self) -> AlgebraExpr:
        left = self.product()
        while self.peek()[0] == "OPLUS":
            self.next()
            left = DirectSum(left, self.product())
        return left

    def product(self) -> AlgebraExpr:
        left = self.atom()
        while self.peek()[0] == "OTIMES":
            self.next()
            left = Tensor(left, self.atom())
        return left

    def atom(self) -> AlgebraExpr:
        tok = self.next()
        kind, text, pos = tok
        if kind == "LP":
            inner = self.sum()
            self.expect("RP")
            return inner
        if kind != "NAME":
            raise ExprSyntaxError(f"expected an algebra, found {text!r}", pos)
        if text == "C":
            return COMPLEX
        if text == "M":
            return Mat(self._int_args(pos, exactly=1)[0])
        if text == "F":
            return FinDim(tuple(self._int_args(pos)))
        if text == "CX":
            return CX(tuple(self._label_args(pos)))
        if text == "UHF":
            return UHF(self._supernatural_arg(pos))
        if text == "CAR":
            return UHF(sn_parse("2:inf"))
        if text == "Z":
            return JiangSu()
        if text == "Q":
            return UHF(sn_parse("Q"))
        if text == "O2":
            return KirchbergSimple("O2")
        if text == "Oinf":
            return KirchbergSimple("Oinf")
        if text == "Kirchberg":
            self.expect("LP")
            name = self.expect("NAME")
            self.expect("RP")
            try:
                return KirchbergSimple(name[1])
            except ValueError as exc:
                raise ExprSyntaxError(str(exc), name[2]) from None
        if text == "K":
            return Compacts()
        if text == "stab":
            self.expect("LP")
            inner = self.sum()
            self.expect("RP")
            return Stabilize(inner)
        if text == "Minf":
            self.expect("LP")
            inner = self.sum()
            self.expect("RP")
            return MatInf(inner)
        raise ExprSyntaxError(f"unknown algebra name {text!r}", pos)

    def _int_args(self, pos: int, exactly: Optional[int] = None) -> List[int]:
        self.expect("LP")
        out = []
        while True:
            tok = self.expect("INT")
            value = int(tok[1])
            if value < 1:
                raise ExprSyntaxError("sizes must be >= 1", tok[2])
            out.append(value)
            if self.peek()[0] == "COMMA":
                self.next()
                continue
            break
        self.expect("RP")
        if exactly is not None and len(out) != exactly:
            raise ExprSyntaxError(f"expected {exactly} argument(s)", pos)
        return out

    def _label_args(self, pos: int) -> List[str]:
        self.expect("LP")
        out = []
        while True:
            tok = self.next()
            if tok[0] not in ("NAME", "INT"):
                raise ExprSyntaxError(f"expected a point label, found {tok[1]!r}", tok[2])
            out.append(tok[1])
            if self.peek()[0] == "COMMA":
                self.next()
                continue
            break
        self.expect("RP")
        if len(set(out)) != len(out):
            raise ExprSyntaxError("point labels must be distinct", pos)
        return out

    def _supernatural_arg(self, pos: int) -> Supernatural:
        self.expect("LP")
        pieces = []
        while self.peek()[0] != "RP":
            tok = self.next()
            if tok[0] == "EOF":
                raise ExprSyntaxError("unterminated UHF argument", tok[2])
            pieces.append(tok[1])
        self.expect("RP")
        try:
            return sn_parse("".join(pieces))
        except ValueError as exc:
            raise ExprSyntaxError(str(exc), pos) from None


def parse_algebra(text: str) -> AlgebraExpr:
    """Parse the catalog syntax; errors carry the character position."""
    return _Parser(text).parse()


def _prec(expr: AlgebraExpr) -> int:
    if isinstance(expr, DirectSum):
        return 1
    if isinstance(expr, Tensor):
        return 2
    return 3


def to_text(expr: AlgebraExpr) -> str:
    """Render an expression in the catalog syntax (reparseable)."""
    if isinstance(expr, Complex):
        return "C"
    if isinstance(expr, Mat):
        return f"M({expr.n})"
    if isinstance(expr, FinDim):
        return f"F({','.join(str(n) for n in expr.sizes)})"
    if isinstance(expr, CX):
        return f"CX({','.join(expr.points)})"
    if isinstance(expr, UHF):
        return f"UHF({sn_format(expr.number)})"
    if isinstance(expr, JiangSu):
        return "Z"
    if isinstance(expr, KirchbergSimple):
        return expr.name if expr.name in ("O2", "Oinf") else f"Kirchberg({expr.name})"
    if isinstance(expr, Compacts):
        return "K"
    if isinstance(expr, Stabilize):
        return f"stab({to_text(expr.inner)})"
    if isinstance(expr, MatInf):
        return f"Minf({to_text(expr.inner)})"
    if isinstance(expr, MatAmp):
        return _binary_text(Tensor(Mat(expr.n), expr.inner))
    if isinstance(expr, (Tensor, DirectSum)):
        return _binary_text(expr)
    raise TypeError(f"not an algebra expression: {expr!r}")


def _binary_text(expr) -> str:
    op = " (x) " if isinstance(expr, Tensor) else " (+) "
    me = _prec(expr)

    def side(child: AlgebraExpr, right: bool) -> str:
        text = to_text(child)
        p = _prec(child)
        if p < me or (p == me and right):
            return f"({text})"
        return text

    return side(expr.left, False) + op + side(expr.right, True)


def normalize(expr: AlgebraExpr) -> AlgebraExpr:
    """Canonical form under plain *-isomorphisms.

    Matrix sizes multiply out, tensor factors that are matrices become
    amplifications, amplifications and algebraic limits are absorbed by
    stabilization, and the compacts become stab(C).
    """
    for _ in range(200):
        new = _norm_step(expr)
        if new == expr:
            return expr
        expr = new
    raise RuntimeError("normalization did not stabilize")


def _norm_step(expr: AlgebraExpr) -> AlgebraExpr:
    if isinstance(expr, Tensor):
        expr = Tensor(_norm_step(expr.left), _norm_step(expr.right))
    elif isinstance(expr, DirectSum):
        expr = DirectSum(_norm_step(expr.left), _norm_step(expr.right))
    elif isinstance(expr, Stabilize):
        expr = Stabilize(_norm_step(expr.inner))
    elif isinstance(expr, MatInf):
        expr = MatInf(_norm_step(expr.inner))
    elif isinstance(expr, MatAmp):
        expr = MatAmp(expr.n, _norm_step(expr.inner))

    if isinstance(expr, Compacts):
        return Stabilize(COMPLEX)
    if isinstance(expr, FinDim) and len(expr.sizes) == 1:
        return Mat(expr.sizes[0])
    if isinstance(expr, Mat) and expr.n == 1:
        return COMPLEX
    if isinstance(expr, MatAmp):
        n, inner = expr.n, expr.inner
        if n == 1:
            return inner
        if isinstance(inner, Complex):
            return Mat(n)
        if isinstance(inner, Mat):
            return Mat(n * inner.n)
        if isinstance(inner, MatAmp):
            return MatAmp(n * inner.n, inner.inner)
        if isinstance(inner, (Stabilize, MatInf)):
            return inner
    if isinstance(expr, Tensor):
        left, right = expr.left, expr.right
        if isinstance(left, Complex):
            return right
        if isinstance(right, Complex):
            return left
        if isinstance(left, Mat):
            return MatAmp(left.n, right)
        if isinstance(right, Mat):
            return MatAmp(right.n, left)
        if isinstance(left, MatAmp):
            return MatAmp(left.n, Tensor(left.inner, right))
        if isinstance(right, MatAmp):
            return MatAmp(right.n, Tensor(left, right.inner))
        if isinstance(left, Stabilize):
            return Stabilize(Tensor(left.inner, right))
        if isinstance(right, Stabilize):
            return Stabilize(Tensor(left, right.inner))
        if isinstance(left, MatInf):
            return MatInf(Tensor(left.inner, right))
        if isinstance(right, MatInf):
            return MatInf(Tensor(left, right.inner))
    if isinstance(expr, Stabilize):
        inner = expr.inner
        if isinstance(inner, Mat):
            return Stabilize(COMPLEX)
        if isinstance(inner, (Stabilize, MatInf)):
            return Stabilize(_strip_limits(inner))
        if isinstance(inner, MatAmp):
            return Stabilize(inner.inner)
    if isinstance(expr, MatInf):
        inner = expr.inner
        if isinstance(inner, Mat):
            return MatInf(COMPLEX)
        if isinstance(inner, MatInf):
            return inner
        if isinstance(inner, MatAmp):
            return MatInf(inner.inner)
        if isinstance(inner, Stabilize):
            return inner
    return expr


def _strip_limits(expr: AlgebraExpr) -> AlgebraExpr:
    while isinstance(expr, (Stabilize, MatInf)):
        expr = expr.inner
    return expr


# ---------------------------------------------------------------------------
# Structural predicates used by the rewrite engine.

def leaves(expr: AlgebraExpr) -> Iterator[AlgebraExpr]:
    if isinstance(expr, (Tensor, DirectSum)):
        yield from leaves(expr.left)
        yield from leaves(expr.right)
    elif isinstance(expr, (Stabilize, MatInf, MatAmp)):
        yield from leaves(expr.inner)
    else:
        yield expr


def is_unital(expr: AlgebraExpr) -> bool:
    if isinstance(expr, (Compacts, Stabilize, MatInf)):
        return False
    if isinstance(expr, (Tensor, DirectSum)):
        return is_unital(expr.left) and is_unital(expr.right)
    if isinstance(expr, MatAmp):
        return is_unital(expr.inner)
    return True


def is_exact(expr: AlgebraExpr) -> bool:
    """Every catalog constructor preserves exactness and every leaf is
    exact, so the certificate is syntactic."""
    return all(
        isinstance(
            leaf,
            (Complex, Mat, FinDim, CX, UHF, JiangSu, KirchbergSimple, Compacts),
        )
        for leaf in leaves(expr)
    )


def simple_summand_count(expr: AlgebraExpr) -> int:
    """Number of simple direct summands (ideals are subsets of these)."""
    if isinstance(expr, (Complex, Mat, UHF, JiangSu, KirchbergSimple, Compacts)):
        return 1
    if isinstance(expr, FinDim):
        return len(expr.sizes)
    if isinstance(expr, CX):
        return len(expr.points)
    if isinstance(expr, DirectSum):
        return simple_summand_count(expr.left) + simple_summand_count(expr.right)
    if isinstance(expr, Tensor):
        return simple_summand_count(expr.left) * simple_summand_count(expr.right)
    if isinstance(expr, (Stabilize, MatInf, MatAmp)):
        return simple_summand_count(expr.inner)
    raise TypeError(f"not an algebra expression: {expr!r}")


def _leaf_finite_dimensional(leaf: AlgebraExpr) -> bool:
    return isinstance(leaf, (Complex, Mat, FinDim, CX))


def finite_type_strict(expr: AlgebraExpr) -> bool:
    """Finite dimensional as an algebra: finite-dimensional leaves combined
    without stabilization or algebraic limits."""
    if isinstance(expr, (Tensor, DirectSum)):
        return finite_type_strict(expr.left) and finite_type_strict(expr.right)
    if isinstance(expr, MatAmp):
        return finite_type_strict(expr.inner)
    if isinstance(expr, (Stabilize, MatInf, Compacts)):
        return False
    return _leaf_finite_dimensional(expr)


def finite_type_compact(expr: AlgebraExpr) -> bool:
    """Built from finite-dimensional leaves and the compacts; every
    representation of such an algebra acts by compact operators blockwise."""
    if isinstance(expr, (Tensor, DirectSum)):
        return finite_type_compact(expr.left) and finite_type_compact(expr.right)
    if isinstance(expr, (MatAmp, Stabilize, MatInf)):
        return finite_type_compact(expr.inner)
    return _leaf_finite_dimensional(expr) or isinstance(expr, Compacts)


def kills_findim_targets(expr: AlgebraExpr) -> bool:
    """True when every order zero map from the algebra into a
    finite-dimensional target is zero.

    Holds for the simple infinite-dimensional leaves (no finite-dimensional
    representations), is inherited by matrix amplifications and algebraic
    limits through their corners, propagates through a tensor product from
    either factor, and holds for any stabilization.
    """
    if isinstance(expr, (UHF, JiangSu, KirchbergSimple, Compacts)):
        return True
    if isinstance(expr, Stabilize):
        return True
    if isinstance(expr, (MatAmp, MatInf)):
        return kills_findim_targets(expr.inner)
    if isinstance(expr, Tensor):
        return kills_findim_targets(expr.left) or kills_findim_targets(expr.right)
    if isinstance(expr, DirectSum):
        return kills_findim_targets(expr.left) and kills_findim_targets(expr.right)
    return False


def kills_compact_targets(expr: AlgebraExpr) -> bool:
    """True when every order zero map into blockwise-compact targets is
    zero: the unit of any corner would land on a finite-rank projection and
    force a finite-dimensional representation.

    The compacts themselves map into such targets (witness the identity),
    so they do not qualify; the simple unital infinite-dimensional leaves
    do.
    """
    if isinstance(expr, (UHF, JiangSu, KirchbergSimple)):
        return True
    if isinstance(expr, (MatAmp, Stabilize, MatInf)):
        return kills_compact_targets(expr.inner)
    if isinstance(expr, Tensor):
        one_kills = kills_compact_targets(expr.left) or kills_compact_targets(
            expr.right
        )
        return one_kills and is_unital(expr.left) and is_unital(expr.right)
    if isinstance(expr, DirectSum):
        return kills_compact_targets(expr.left) and kills_compact_targets(expr.right)
    return False


SSA_LEAVES = (JiangSu, KirchbergSimple)


def is_strongly_self_absorbing(expr: AlgebraExpr) -> bool:
    """Catalog membership: the Jiang-Su algebra, O2 and Oinf, and UHF
    algebras of infinite type (the universal UHF algebra among them)."""
    if isinstance(expr, JiangSu):
        return True
    if isinstance(expr, KirchbergSimple):
        return expr.name in ("O2", "Oinf")
    if isinstance(expr, UHF):
        return sn_is_infinite_type(expr.number)
    return False


def absorbs(target: AlgebraExpr, d: AlgebraExpr) -> bool:
    """Certify syntactically that the target is D-stable for a strongly
    self-absorbing catalog algebra D: D appears as a tensor factor, up to
    matrix amplification, limits and stabilization, or a UHF factor already
    dominates D's supernatural number."""
    if isinstance(target, (Stabilize, MatInf, MatAmp)):
        return absorbs(target.inner, d)
    if isinstance(target, Tensor):
        return absorbs(target.left, d) or absorbs(target.right, d)
    if isinstance(d, UHF) and isinstance(target, UHF):
        return sn_eq(sn_mul(target.number, d.number), target.number)
    return target == d

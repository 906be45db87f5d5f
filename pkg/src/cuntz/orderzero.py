"""Finite-dimensional models of completely positive contractive order zero
maps and the comparison theory between them.

A map is stored through its structure decomposition: the domain is a finite
direct sum of matrix blocks, block i is represented with multiplicity
``mults[i]``, and ``blocks[i]`` is the positive contraction h restricted to
the corresponding reducing subspace, so the map acts as

    a = (a_1, ..., a_k)  |->  diag(H_1 (x) a_1, ..., H_k (x) a_k)

zero-padded to the target dimension.  Two numeric modes are supported:
``diag`` keeps every H_i diagonal with rational entries so ranks, cuts and
comparisons are decided exactly; ``psd`` allows arbitrary positive
semidefinite blocks in floating point with a 1e-10 eigenvalue cutoff.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .extnat import ExtNat
from .multiplicity import MultiplicityFunction, Space, mf, mf_leq

DIAG = "diag"
PSD = "psd"

EIG_CUTOFF = 1e-10
NORM_TOL = 1e-12


class DimensionMismatch(Exception):
    """Block data does not fit the declared dimensions."""


class NotPositive(Exception):
    """A matrix that must be positive semidefinite is not."""


class NormExceedsOne(Exception):
    """A contraction was declared but its norm exceeds one."""


class NonCommutativeDomain(Exception):
    """The operation needs a commutative domain (all blocks of size 1)."""


class ShapeMismatch(Exception):
    """A witness matrix has the wrong shape."""


class PreconditionViolated(Exception):
    """The comparison hypothesis of the construction does not hold."""


class NotDominated(Exception):
    """Handelman's construction needs a <= b."""


class DomainMismatch(Exception):
    """The maps do not share the required domain or target."""


@dataclass(frozen=True)
class FinDimAlgebra:
    """A finite direct sum of matrix algebras, given by its block sizes."""

    blocks: Tuple[int, ...]

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("a finite-dimensional algebra needs at least one block")
        if any(not isinstance(n, int) or n < 1 for n in self.blocks):
            raise ValueError(f"block sizes must be integers >= 1, got {self.blocks}")

    @property
    def is_commutative(self) -> bool:
        return all(n == 1 for n in self.blocks)

    @property
    def point_labels(self) -> Tuple[str, ...]:
        return tuple(f"x{i + 1}" for i in range(len(self.blocks)))

    def spectrum(self) -> Space:
        return Space.discrete(self.point_labels)


def findim(*blocks: int) -> FinDimAlgebra:
    return FinDimAlgebra(tuple(blocks))


SCALARS = findim(1)

DiagBlock = Tuple[Fraction, ...]
Block = Union[DiagBlock, np.ndarray]
Element = Sequence[Union[float, Fraction, Sequence, np.ndarray]]


@dataclass(frozen=True, eq=False)
class OrderZeroMap:
    domain: FinDimAlgebra
    target_dim: int
    mults: Tuple[int, ...]
    blocks: Tuple[Block, ...]
    mode: str

    @property
    def offsets(self) -> Tuple[int, ...]:
        out = []
        acc = 0
        for m, n in zip(self.mults, self.domain.blocks):
            out.append(acc)
            acc += m * n
        return tuple(out)

    def block_dense(self, i: int) -> np.ndarray:
        h = self.blocks[i]
        if self.mode == DIAG:
            return np.diag([float(x) for x in h]) if h else np.zeros((0, 0))
        return np.asarray(h, dtype=float)

    def apply(self, element: Element) -> np.ndarray:
        """Evaluate the map on a domain element, given block by block."""
        if len(element) != len(self.domain.blocks):
            raise DimensionMismatch(
                f"element has {len(element)} blocks, domain has {len(self.domain.blocks)}"
            )
        out = np.zeros((self.target_dim, self.target_dim))
        for i, (m, n) in enumerate(zip(self.mults, self.domain.blocks)):
            if m == 0:
                continue
            a = np.atleast_2d(np.asarray(element[i], dtype=float))
            if a.shape != (n, n):
                raise DimensionMismatch(f"block {i} must be {n}x{n}, got {a.shape}")
            piece = np.kron(self.block_dense(i), a)
            off = self.offsets[i]
            out[off : off + m * n, off : off + m * n] = piece
        return out

    def h_matrix(self) -> np.ndarray:
        """The positive contraction h of the structure decomposition."""
        return self.apply([np.eye(n) for n in self.domain.blocks])

    def point_rank(self, i: int) -> int:
        if self.mode == DIAG:
            return sum(1 for x in self.blocks[i] if x > 0)
        if self.mults[i] == 0:
            return 0
        w = np.linalg.eigvalsh(self.block_dense(i))
        return int(np.count_nonzero(w > EIG_CUTOFF))

    def norm(self) -> float:
        return max(
            (float(max(h)) if self.mode == DIAG else float(np.linalg.eigvalsh(self.block_dense(i)).max())) if len(h) else 0.0
            for i, h in enumerate(self.blocks)
        ) if self.blocks else 0.0


def oz_new(
    domain: FinDimAlgebra,
    target_dim: int,
    mults: Sequence[int],
    blocks: Sequence,
    mode: str = DIAG,
) -> OrderZeroMap:
    """Validate and build an order zero map from its block data."""
    if mode not in (DIAG, PSD):
        raise ValueError(f"unknown mode {mode!r}")
    mults = tuple(int(m) for m in mults)
    if len(mults) != len(domain.blocks) or len(blocks) != len(domain.blocks):
        raise DimensionMismatch(
            "need one multiplicity and one block per domain summand"
        )
    if any(m < 0 for m in mults):
        raise DimensionMismatch("multiplicities are non-negative")
    used = sum(m * n for m, n in zip(mults, domain.blocks))
    if used > target_dim:
        raise DimensionMismatch(
            f"blocks need dimension {used} but the target has {target_dim}"
        )

    stored: List[Block] = []
    for i, (m, raw) in enumerate(zip(mults, blocks)):
        if mode == DIAG:
            entries = tuple(Fraction(x) for x in raw)
            if len(entries) != m:
                raise DimensionMismatch(
                    f"block {i} has {len(entries)} diagonal entries, multiplicity is {m}"
                )
            if any(x < 0 for x in entries):
                raise NotPositive(f"block {i} has a negative entry")
            if any(x > 1 for x in entries):
                raise NormExceedsOne(f"block {i} has an entry above 1")
            stored.append(entries)
        else:
            h = np.asarray(raw, dtype=float)
            if h.shape != (m, m):
                raise DimensionMismatch(f"block {i} must be {m}x{m}, got {h.shape}")
            if m:
                if not np.allclose(h, h.T, atol=EIG_CUTOFF):
                    raise NotPositive(f"block {i} is not symmetric")
                w = np.linalg.eigvalsh(h)
                if w.min(initial=0.0) < -EIG_CUTOFF:
                    raise NotPositive(f"block {i} has eigenvalue {w.min()}")
                if w.max(initial=0.0) > 1 + EIG_CUTOFF:
                    raise NormExceedsOne(f"block {i} has eigenvalue {w.max()}")
            stored.append(h)
    return OrderZeroMap(domain, int(target_dim), mults, tuple(stored), mode)


def generators(domain: FinDimAlgebra) -> List[List[np.ndarray]]:
    """Matrix units of every block; they span the domain linearly."""
    gens = []
    for i, n in enumerate(domain.blocks):
        for r in range(n):
            for s in range(n):
                unit = np.zeros((n, n))
                unit[r, s] = 1.0
                elem = [np.zeros((k, k)) for k in domain.blocks]
                elem[i] = unit
                gens.append(elem)
    return gens


@dataclass
class OrthogonalityReport:
    passed: bool
    max_violation: float
    trials: int
    tolerance: float


def oz_check_order_zero(
    phi, trials: int = 50, seed: int = 0, tol: float = 1e-9
) -> OrthogonalityReport:
    """Probe the order zero identity on random orthogonal positive pairs.

    Accepts any object with ``domain`` and ``apply``; pairs are supported on
    disjoint coordinate sets (inside one block or across two blocks), so
    their product vanishes in the domain and must vanish in the image.
    """
    rng = random.Random(seed)
    sizes = phi.domain.blocks
    k = len(sizes)
    options = []
    if k >= 2:
        options.append("cross")
    if any(n >= 2 for n in sizes):
        options.append("split")
    worst = 0.0
    done = 0
    for _ in range(trials):
        if not options:
            break
        a_blocks = [np.zeros((n, n)) for n in sizes]
        b_blocks = [np.zeros((n, n)) for n in sizes]
        mode = rng.choice(options)
        if mode == "cross":
            i, j = rng.sample(range(k), 2)
            a_blocks[i] = _random_psd(sizes[i], rng)
            b_blocks[j] = _random_psd(sizes[j], rng)
        else:
            i = rng.choice([idx for idx, n in enumerate(sizes) if n >= 2])
            n = sizes[i]
            cut = rng.randrange(1, n)
            coords = list(range(n))
            rng.shuffle(coords)
            a_blocks[i] = _corner_psd(n, coords[:cut], rng)
            b_blocks[i] = _corner_psd(n, coords[cut:], rng)
        va = phi.apply(a_blocks)
        vb = phi.apply(b_blocks)
        worst = max(worst, op_norm(va @ vb))
        done += 1
    return OrthogonalityReport(worst <= tol, worst, done, tol)


def _random_psd(n: int, rng: random.Random) -> np.ndarray:
    g = np.array([[rng.gauss(0, 1) for _ in range(n)] for _ in range(n)])
    m = g @ g.T
    top = np.linalg.eigvalsh(m).max()
    return m / top if top > 0 else m


def _corner_psd(n: int, coords: Sequence[int], rng: random.Random) -> np.ndarray:
    small = _random_psd(len(coords), rng)
    out = np.zeros((n, n))
    for a, ca in enumerate(coords):
        for b, cb in enumerate(coords):
            out[ca, cb] = small[a, b]
    return out


def oz_eps_cut(phi: OrderZeroMap, eps) -> OrderZeroMap:
    """The cut-down (h - eps)+ applied to the structure decomposition."""
    if phi.mode == DIAG:
        e = Fraction(eps)
        if e < 0:
            raise NotPositive("eps must be >= 0")
        blocks = tuple(tuple(max(x - e, Fraction(0)) for x in h) for h in phi.blocks)
        return OrderZeroMap(phi.domain, phi.target_dim, phi.mults, blocks, DIAG)
    e = float(eps)
    if e < 0:
        raise NotPositive("eps must be >= 0")
    blocks = []
    for i, m in enumerate(phi.mults):
        if m == 0:
            blocks.append(np.zeros((0, 0)))
            continue
        w, v = np.linalg.eigh(phi.block_dense(i))
        w = np.clip(w - e, 0.0, None)
        blocks.append((v * w) @ v.T)
    return OrderZeroMap(phi.domain, phi.target_dim, phi.mults, tuple(blocks), PSD)


def oz_multiplicity(phi: OrderZeroMap) -> MultiplicityFunction:
    """The multiplicity function of a commutative-domain map.

    Point i of the spectrum carries the rank of H_i; rank-zero points are
    simply absent from the atom list.
    """
    if not phi.domain.is_commutative:
        raise NonCommutativeDomain("multiplicity profiles need a commutative domain")
    space = phi.domain.spectrum()
    atoms = {}
    for i, label in enumerate(phi.domain.point_labels):
        r = phi.point_rank(i)
        if r:
            atoms[label] = ExtNat(r)
    return mf(space, atoms)


def oz_cuntz_leq_commutative(phi: OrderZeroMap, psi: OrderZeroMap) -> bool:
    """Decide Cuntz subequivalence via the multiplicity comparison."""
    return mf_leq(oz_multiplicity(phi), oz_multiplicity(psi))


def comparison_certificate(
    phi: OrderZeroMap, psi: OrderZeroMap
) -> Optional[Tuple[str, int, int]]:
    """A point where phi's rank exceeds psi's, or None when phi <= psi."""
    nu, mu = oz_multiplicity(phi), oz_multiplicity(psi)
    mu_atoms = mu.atom_map()
    for p, v in nu.atoms:
        other = mu_atoms.get(p, ExtNat(0))
        if not v <= other:
            return (p, v.finite_value, other.finite_value)
    return None


@dataclass
class WitnessReport:
    witness: np.ndarray
    residual: float
    tolerance: float
    norm_tolerance: float = NORM_TOL

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def oz_verify_witness(
    phi: OrderZeroMap, psi: OrderZeroMap, b: np.ndarray, tol: float = 1e-6
) -> WitnessReport:
    """Residual max_g ||b* psi(g) b - phi(g)|| over the matrix-unit generators."""
    if phi.domain != psi.domain:
        raise DomainMismatch("witness verification needs a common domain")
    b = np.asarray(b, dtype=float)
    if b.shape != (psi.target_dim, phi.target_dim):
        raise ShapeMismatch(
            f"witness must be {psi.target_dim}x{phi.target_dim}, got {b.shape}"
        )
    residual = 0.0
    for g in generators(phi.domain):
        r = b.T @ psi.apply(g) @ b - phi.apply(g)
        residual = max(residual, op_norm(r))
    return WitnessReport(b, residual, tol)


def oz_construct_witness(
    phi: OrderZeroMap, psi: OrderZeroMap, tol: float = 1e-6
) -> WitnessReport:
    """Build an explicit witness for phi <= psi by spectral matching.

    Positive eigenvalues are paired point by point in decreasing order and
    scaled by sqrt(lambda/mu); the residual vanishes up to rounding.
    """
    if not oz_cuntz_leq_commutative(phi, psi):
        raise PreconditionViolated("phi is not below psi; no witness exists")
    b = np.zeros((psi.target_dim, phi.target_dim))
    for i in range(len(phi.domain.blocks)):
        lam, vecs_phi = _eigpairs(phi, i)
        mu, vecs_psi = _eigpairs(psi, i)
        pos_phi = [j for j, x in enumerate(lam) if x > EIG_CUTOFF]
        pos_psi = [j for j, x in enumerate(mu) if x > EIG_CUTOFF]
        off_phi, off_psi = phi.offsets[i], psi.offsets[i]
        for jp, jq in zip(pos_phi, pos_psi):
            scale = sqrt(lam[jp] / mu[jq])
            col = vecs_phi[:, jp]
            row = vecs_psi[:, jq]
            mp, mq = len(lam), len(mu)
            b[off_psi : off_psi + mq, off_phi : off_phi + mp] += scale * np.outer(
                row, col
            )
    return oz_verify_witness(phi, psi, b, tol)


def _eigpairs(phi: OrderZeroMap, i: int) -> Tuple[np.ndarray, np.ndarray]:
    m = phi.mults[i]
    if m == 0:
        return np.zeros(0), np.zeros((0, 0))
    if phi.mode == DIAG:
        w = np.array([float(x) for x in phi.blocks[i]])
        order = np.argsort(-w)
        return w[order], np.eye(m)[:, order]
    w, v = np.linalg.eigh(phi.block_dense(i))
    order = np.argsort(-w)
    return w[order], v[:, order]


@dataclass
class EpsRankReport:
    lhs_rank: int
    rhs_rank: int

    @property
    def holds(self) -> bool:
        return self.lhs_rank <= self.rhs_rank


def oz_eps_rank_inequality(phi: OrderZeroMap, a: Element, eps) -> EpsRankReport:
    """Compare rank((phi(a) - eps)+) with rank(phi((a - eps)+)).

    Decided exactly when the map is diagonal and ``a`` is given by diagonal
    rational blocks; otherwise computed in floating point with the 1e-10
    eigenvalue cutoff.
    """
    exact = phi.mode == DIAG and _is_exact_diag(a, phi.domain)
    if exact:
        e = Fraction(eps)
        if e < 0:
            raise NotPositive("eps must be >= 0")
        diags = [tuple(Fraction(x) for x in blk) for blk in a]
        for blk in diags:
            if any(x < 0 for x in blk):
                raise NotPositive("the element must be positive")
        lhs = rhs = 0
        for i, blk in enumerate(diags):
            for lam in phi.blocks[i]:
                for x in blk:
                    if lam * x > e:
                        lhs += 1
                    if lam > 0 and x > e:
                        rhs += 1
        return EpsRankReport(lhs, rhs)

    e = float(eps)
    if e < 0:
        raise NotPositive("eps must be >= 0")
    mats = [np.atleast_2d(np.asarray(blk, dtype=float)) for blk in a]
    cut = []
    for m_blk in mats:
        w, v = np.linalg.eigh(m_blk)
        if w.min(initial=0.0) < -EIG_CUTOFF:
            raise NotPositive("the element must be positive")
        cut.append((v * np.clip(w - e, 0.0, None)) @ v.T)
    lhs = int(np.count_nonzero(np.linalg.eigvalsh(phi.apply(mats)) > e + EIG_CUTOFF))
    rhs_mat = phi.apply(cut)
    rhs = int(np.count_nonzero(np.linalg.eigvalsh(rhs_mat) > EIG_CUTOFF))
    return EpsRankReport(lhs, rhs)


def _is_exact_diag(a: Element, domain: FinDimAlgebra) -> bool:
    if len(a) != len(domain.blocks):
        raise DimensionMismatch("element blocks do not match the domain")
    for blk, n in zip(a, domain.blocks):
        if isinstance(blk, np.ndarray):
            return False
        if not isinstance(blk, (tuple, list)) or len(blk) != n:
            return False
        if not all(isinstance(x, (int, Fraction)) for x in blk):
            return False
    return True


@dataclass
class HandelmanReport:
    z: np.ndarray
    z_norm: float
    deviation: float
    norm_tolerance: float = NORM_TOL


def oz_handelman(a: np.ndarray, b: np.ndarray, n: int) -> HandelmanReport:
    """The contraction z_n = a^(1/2) b^(1/2) (b + 1/n)^(-1) for 0 <= a <= b.

    Reports its norm (at most 1 up to rounding) and the deviation
    ||z_n b^(1/2) - a^(1/2)||, which tends to 0 as n grows.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeMismatch("a and b must be square matrices of equal size")
    for name, m in (("a", a), ("b", b)):
        if not np.allclose(m, m.T, atol=EIG_CUTOFF):
            raise NotPositive(f"{name} is not symmetric")
        if np.linalg.eigvalsh(m).min() < -EIG_CUTOFF:
            raise NotPositive(f"{name} is not positive semidefinite")
    if np.linalg.eigvalsh(b - a).min() < -EIG_CUTOFF:
        raise NotDominated("a <= b fails")
    ra = _psd_sqrt(a)
    rb = _psd_sqrt(b)
    z = ra @ rb @ np.linalg.inv(b + np.eye(a.shape[0]) / n)
    return HandelmanReport(z, op_norm(z), op_norm(z @ rb - ra))


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.T


def oz_direct_sum_hat(phi: OrderZeroMap, psi: OrderZeroMap) -> OrderZeroMap:
    """The sum representative phi (+) psi on the shared domain."""
    if phi.domain != psi.domain:
        raise DomainMismatch("the hat direct sum needs equal domains")
    mults = tuple(m1 + m2 for m1, m2 in zip(phi.mults, psi.mults))
    if phi.mode == DIAG and psi.mode == DIAG:
        blocks = tuple(h1 + h2 for h1, h2 in zip(phi.blocks, psi.blocks))
        mode = DIAG
    else:
        blocks = []
        for i in range(len(phi.mults)):
            h1, h2 = phi.block_dense(i), psi.block_dense(i)
            out = np.zeros((mults[i], mults[i]))
            out[: h1.shape[0], : h1.shape[0]] = h1
            out[h1.shape[0] :, h1.shape[0] :] = h2
            blocks.append(out)
        blocks = tuple(blocks)
        mode = PSD
    return OrderZeroMap(
        phi.domain, phi.target_dim + psi.target_dim, mults, blocks, mode
    )


def oz_split_direct_sum(
    phi: OrderZeroMap, k: int
) -> Tuple[OrderZeroMap, OrderZeroMap]:
    """Restrict to the first k domain summands and to the rest.

    Both restrictions keep the full target; rejoining them with
    ``oz_join_direct_sum`` reproduces the original representation.
    """
    nblocks = len(phi.domain.blocks)
    if not 1 <= k < nblocks:
        raise DomainMismatch(f"split index {k} must cut {nblocks} summands in two")
    left = OrderZeroMap(
        FinDimAlgebra(phi.domain.blocks[:k]),
        phi.target_dim,
        phi.mults[:k],
        phi.blocks[:k],
        phi.mode,
    )
    right = OrderZeroMap(
        FinDimAlgebra(phi.domain.blocks[k:]),
        phi.target_dim,
        phi.mults[k:],
        phi.blocks[k:],
        phi.mode,
    )
    return left, right


def oz_join_direct_sum(phi: OrderZeroMap, psi: OrderZeroMap) -> OrderZeroMap:
    """Reassemble a map on a direct-sum domain from its two restrictions."""
    if phi.target_dim != psi.target_dim:
        raise DomainMismatch("the restrictions must share the target")
    if phi.mode != psi.mode:
        raise DomainMismatch("the restrictions must share the numeric mode")
    domain = FinDimAlgebra(phi.domain.blocks + psi.domain.blocks)
    used = sum(
        m * n for m, n in zip(phi.mults + psi.mults, domain.blocks)
    )
    if used > phi.target_dim:
        raise DimensionMismatch("the joined blocks exceed the target dimension")
    return OrderZeroMap(
        domain,
        phi.target_dim,
        phi.mults + psi.mults,
        phi.blocks + psi.blocks,
        phi.mode,
    )


def oz_kronecker_rank(phi: OrderZeroMap, psi: OrderZeroMap) -> ExtNat:
    """Rank of the composition representative for scalar-domain maps."""
    if phi.domain != SCALARS or psi.domain != SCALARS:
        raise PreconditionViolated("the Kronecker model needs scalar domains")
    return ExtNat(phi.point_rank(0)) * ExtNat(psi.point_rank(0))


def oz_witness_search(
    phi: OrderZeroMap, psi: OrderZeroMap, samples: int = 10000, seed: int = 0
) -> float:
    """Best residual over random witness candidates; deterministic per seed.

    Candidates are dense Gaussian matrices with random scaling.  Residuals
    are screened through the entrywise lower bound of the operator norm, so
    the exact norm is only computed where it could improve the minimum.
    """
    rng = np.random.default_rng(seed)
    gens = generators(phi.domain)
    psi_g = np.stack([psi.apply(g) for g in gens])
    phi_g = np.stack([phi.apply(g) for g in gens])
    best = float("inf")
    chunk = 512
    left = samples
    while left > 0:
        s = min(chunk, left)
        left -= s
        bs = rng.standard_normal((s, psi.target_dim, phi.target_dim))
        bs *= rng.uniform(0.05, 2.0, size=(s, 1, 1))
        r = np.einsum("sji,gjk,skl->sgil", bs, psi_g, bs) - phi_g[None, :, :, :]
        lower = np.abs(r).reshape(s, len(gens), -1).max(axis=2).max(axis=1)
        for idx in np.argsort(lower):
            if lower[idx] >= best:
                break
            exact = max(op_norm(r[idx, g]) for g in range(len(gens)))
            best = min(best, exact)
    return best


def op_norm(m: np.ndarray) -> float:
    """Largest singular value; falls back to power iteration if the SVD
    does not converge (tolerance 1e-12)."""
    if m.size == 0:
        return 0.0
    try:
        return float(np.linalg.svd(m, compute_uv=False)[0])
    except np.linalg.LinAlgError:
        gram = m.T @ m
        v = np.ones(gram.shape[0]) / sqrt(gram.shape[0])
        prev = 0.0
        for _ in range(10000):
            w = gram @ v
            norm = np.linalg.norm(w)
            if norm == 0:
                return 0.0
            v = w / norm
            if abs(norm - prev) <= NORM_TOL * max(1.0, norm):
                break
            prev = norm
        return float(sqrt(norm))


# ---------------------------------------------------------------------------
# JSON interchange.

def oz_to_json(phi: OrderZeroMap) -> dict:
    blocks = []
    for i, m in enumerate(phi.mults):
        if phi.mode == DIAG:
            rows = [
                [str(phi.blocks[i][r]) if r == c else "0" for c in range(m)]
                for r in range(m)
            ]
        else:
            rows = [[float(x) for x in row] for row in phi.block_dense(i)]
        blocks.append(rows)
    return {
        "domain": list(phi.domain.blocks),
        "target_dim": phi.target_dim,
        "mult": list(phi.mults),
        "blocks": blocks,
        "mode": phi.mode,
    }


def oz_from_json(doc: dict) -> OrderZeroMap:
    domain = FinDimAlgebra(tuple(int(n) for n in doc["domain"]))
    mode = doc.get("mode", DIAG)
    mults = [int(m) for m in doc["mult"]]
    raw_blocks = doc["blocks"]
    if len(raw_blocks) != len(mults):
        raise DimensionMismatch("need one block matrix per multiplicity")
    blocks = []
    for m, rows in zip(mults, raw_blocks):
        if len(rows) != m or any(len(r) != m for r in rows):
            raise DimensionMismatch(f"block must be {m}x{m}")
        if mode == DIAG:
            diag = []
            for r in range(m):
                for c in range(m):
                    val = Fraction(str(rows[r][c]))
                    if r == c:
                        diag.append(val)
                    elif val != 0:
                        raise ValueError(
                            "diagonal mode requires zero off-diagonal entries"
                        )
            blocks.append(diag)
        else:
            blocks.append(np.array([[float(x) for x in r] for r in rows]))
    return oz_new(domain, int(doc["target_dim"]), mults, blocks, mode)

"""Finite (classical) root system engine over exact rationals.

Builds the irreducible types A-G from their Cartan matrices and exposes
positive roots, the highest root, the invariant bilinear form normalized so
the highest root has squared length 2, fundamental weights/coweights, and
the Weyl vector rho.

Conventions (documented here once, asserted in tests):

* Weights live in simple-root coordinates: ``lam = sum_i lam[i] * alpha_i``.
* Coroot vectors live in simple-coroot coordinates: ``h = sum_j h[j] * h_j``.
* The Cartan matrix entry is ``entries[i][j] = <alpha_j, h_i>``, so the
  pairing of a weight against a coroot reads ``<alpha_i, h_j> = entries[j][i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache

from .linalg import (
    Mat,
    Vec,
    bilinear,
    leading_principal_minors,
    mat_inverse,
    mat_vec,
    transpose,
    vec,
    vec_add,
    vec_dot,
    vec_scale,
    zero_vec,
)

SERIES_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

# classical counts of positive roots, used as an independent cross-check
POSITIVE_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


class RootSystemError(ValueError):
    """Unknown type, rank out of range, or a violated structural invariant."""


def parse_type(label: str) -> tuple[str, int]:
    """Split a label like ``"A2"`` or ``"E8"`` into (series, rank)."""
    label = label.strip()
    if len(label) < 2 or label[0].upper() not in SERIES_RANK_RANGE:
        raise RootSystemError(f"unknown root system type {label!r}")
    series = label[0].upper()
    try:
        rank = int(label[1:])
    except ValueError as exc:
        raise RootSystemError(f"unknown root system type {label!r}") from exc
    return series, rank


def cartan_entries(series: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix of an irreducible finite type, Bourbaki numbering."""
    lo, hi = SERIES_RANK_RANGE.get(series, (None, None))
    if lo is None or rank < lo or (hi is not None and rank > hi):
        raise RootSystemError(f"rank {rank} out of range for series {series}")
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def bond(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j] = aij
        a[j][i] = aji

    if series in ("A", "B", "C"):
        for i in range(rank - 1):
            bond(i, i + 1)
        if series == "B" and rank >= 2:
            # alpha_rank is short: <alpha_{rank-1}, h_rank> = -2
            a[rank - 1][rank - 2] = -2
        if series == "C" and rank >= 2:
            # alpha_rank is long: <alpha_rank, h_{rank-1}> = -2
            a[rank - 2][rank - 1] = -2
    elif series == "D":
        for i in range(rank - 3):
            bond(i, i + 1)
        bond(rank - 3, rank - 2)
        bond(rank - 3, rank - 1)
    elif series == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
        for i, j in zip(chain, chain[1:]):
            bond(i, j)
        bond(1, 3)
    elif series == "F":
        bond(0, 1)
        bond(1, 2, aij=-1, aji=-2)
        bond(2, 3)
    elif series == "G":
        bond(0, 1, aij=-1, aji=-3)
    return tuple(tuple(row) for row in a)


@dataclass(frozen=True)
class CartanMatrix:
    """Integer Cartan matrix of finite type; entries[i][j] = <alpha_j, h_i>."""

    rank: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        a = self.entries
        if len(a) != self.rank or any(len(row) != self.rank for row in a):
            raise RootSystemError("entries shape does not match rank")
        for i in range(self.rank):
            if a[i][i] != 2:
                raise RootSystemError("diagonal entries must equal 2")
            for j in range(self.rank):
                if i != j:
                    if a[i][j] > 0:
                        raise RootSystemError("off-diagonal entries must be <= 0")
                    if (a[i][j] == 0) != (a[j][i] == 0):
                        raise RootSystemError("zero pattern must be symmetric")
        d = symmetrizer(a)
        sym = tuple(tuple(Q(d[i]) * a[i][j] for j in range(self.rank)) for i in range(self.rank))
        if any(m <= 0 for m in leading_principal_minors(sym)):
            raise RootSystemError("matrix is not of finite type")


def symmetrizer(a) -> list[Q]:
    """Positive d with d_i * a[i][j] = d_j * a[j][i], normalized min d = 1."""
    n = len(a)
    d: list[Q | None] = [None] * n
    d[0] = Q(1)
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(n):
            if a[i][j] != 0 and i != j and d[j] is None:
                # d_j = d_i * a[i][j] / a[j][i]
                d[j] = d[i] * Q(a[i][j], a[j][i])
                todo.append(j)
    if any(x is None for x in d):
        raise RootSystemError("Cartan matrix is not irreducible")
    m = min(d)  # type: ignore[type-var]
    return [x / m for x in d]  # type: ignore[operator]


@dataclass(frozen=True)
class Weight:
    """Element of h^* in simple-root coordinates."""

    coords: Vec

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(vec_add(self.coords, other.coords))

    def __rmul__(self, c) -> "Weight":
        return Weight(vec_scale(c, self.coords))

    def to_fundamental(self, rs: "FiniteRootSystem") -> Vec:
        """Coordinates in the fundamental-weight basis, i.e. <lam, h_j>."""
        return tuple(rs.pairing(self.coords, row) for row in _unit_rows(rs.rank))

    @staticmethod
    def from_fundamental(rs: "FiniteRootSystem", fund: Vec) -> "Weight":
        coords = zero_vec(rs.rank)
        for j, c in enumerate(fund):
            coords = vec_add(coords, vec_scale(c, rs.fundamental_weights[j]))
        return Weight(coords)


def _unit_rows(n: int):
    return tuple(tuple(Q(1) if j == i else Q(0) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class FiniteRootSystem:
    """Immutable bundle of root data for one irreducible finite type.

    ``positive_roots`` are integer vectors in simple-root coordinates;
    ``form`` is the Gram matrix (alpha_i, alpha_j) with (highest, highest) = 2;
    ``fundamental_weights`` are in simple-root coordinates and
    ``fundamental_coweights`` in simple-coroot coordinates.
    """

    series: str
    rank: int
    cartan: CartanMatrix
    positive_roots: tuple[tuple[int, ...], ...]
    highest_root: tuple[int, ...]
    form: Mat
    fundamental_weights: tuple[Vec, ...]
    fundamental_coweights: tuple[Vec, ...]
    rho: Vec
    d: tuple[Q, ...]  # (alpha_i, alpha_i)/2 per simple root
    coroot_form: Mat  # (h_i, h_j)

    @property
    def label(self) -> str:
        return f"{self.series}{self.rank}"

    def pairing(self, lam: Vec, h: Vec) -> Q:
        """<lam, h> for lam in simple-root and h in simple-coroot coordinates."""
        if len(lam) != self.rank or len(h) != self.rank:
            raise RootSystemError("rank mismatch in pairing")
        a = self.cartan.entries
        # <alpha_i, h_j> = a[j][i], so <lam, h> = sum_j h_j * (A lam)_j
        return sum((Q(h[j]) * sum((Q(a[j][i]) * lam[i] for i in range(self.rank)), Q(0))
                    for j in range(self.rank)), Q(0))

    def weight_form(self, lam: Vec, mu: Vec) -> Q:
        """(lam, mu) on h^* in simple-root coordinates."""
        return bilinear(self.form, vec(lam), vec(mu))

    def coroot_pair_form(self, g: Vec, h: Vec) -> Q:
        """(g, h) on h in simple-coroot coordinates."""
        return bilinear(self.coroot_form, vec(g), vec(h))

    def root_norm2(self, beta) -> Q:
        return self.weight_form(vec(beta), vec(beta))

    def is_root(self, beta) -> bool:
        t = tuple(int(x) for x in beta)
        return t in self._root_set()

    def _root_set(self) -> frozenset:
        cached = getattr(self, "_roots_cache", None)
        if cached is None:
            cached = frozenset(self.positive_roots) | frozenset(
                tuple(-x for x in r) for r in self.positive_roots
            )
            object.__setattr__(self, "_roots_cache", cached)
        return cached

    def coroot_of(self, beta) -> Vec:
        """h_beta in simple-coroot coordinates: c_i d_i / d_beta for beta = sum c_i alpha_i."""
        d_beta = self.root_norm2(beta) / 2
        out = tuple(Q(c) * self.d[i] / d_beta for i, c in enumerate(beta))
        if any(x.denominator != 1 for x in out):
            raise RootSystemError(f"coroot of {beta} is not integral")
        return out

    def coweight_vector(self, h: Vec) -> Vec:
        """Image of a coroot-coordinate vector under the form identification
        h -> h^*, in simple-root coordinates (nu(h_j) = alpha_j / d_j)."""
        return tuple(Q(h[j]) / self.d[j] for j in range(self.rank))


def build_root_system(series: str, rank: int) -> FiniteRootSystem:
    """Construct the full root datum for an irreducible finite type.

    Positive roots are produced by height-layer closure from the simple
    roots: ``beta + alpha_i`` is a root iff ``p - <beta, h_i> > 0`` where
    ``p`` is the number of backward steps ``beta - k alpha_i`` remaining
    roots.  The count is cross-checked against the classical value.
    """
    series = series.upper()
    a = cartan_entries(series, rank)
    cm = CartanMatrix(rank, a)

    def cpair(beta, i) -> int:
        # <beta, h_i> = sum_j a[i][j] beta_j
        return sum(a[i][j] * beta[j] for j in range(rank))

    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    found: set[tuple[int, ...]] = set(simple)
    layer = list(simple)
    ordered: list[tuple[int, ...]] = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(rank):
                cand = tuple(beta[j] + (1 if j == i else 0) for j in range(rank))
                if cand in found:
                    continue
                p = 0
                back = list(beta)
                while True:
                    back[i] -= 1
                    if tuple(back) in found:
                        p += 1
                    else:
                        break
                if p - cpair(beta, i) > 0:
                    found.add(cand)
                    nxt.append(cand)
        nxt.sort()
        ordered.extend(nxt)
        layer = nxt

    expected = POSITIVE_ROOT_COUNT[series](rank)
    if len(ordered) != expected:
        raise RootSystemError(
            f"closure produced {len(ordered)} positive roots for {series}{rank}, expected {expected}"
        )

    highest = max(ordered, key=lambda r: (sum(r), r))
    if any(any(h < r for h, r in zip(highest, root)) for root in ordered):
        raise RootSystemError("highest root does not dominate coordinatewise")

    d_raw = symmetrizer(a)
    norm_raw = sum(
        Q(highest[i]) * Q(highest[j]) * d_raw[i] * a[i][j]
        for i in range(rank)
        for j in range(rank)
    )
    d = tuple(x * Q(2) / norm_raw for x in d_raw)
    form = tuple(tuple(d[i] * a[i][j] for j in range(rank)) for i in range(rank))
    coroot_form = tuple(tuple(Q(a[i][j]) / d[j] for j in range(rank)) for i in range(rank))

    a_inv = mat_inverse(mat_for(a))
    # <omega_i, h_j> = delta_ij  =>  omega_i coords form column i of A^{-1}
    weights = tuple(tuple(a_inv[k][i] for k in range(rank)) for i in range(rank))
    # <alpha_i, omega_j^vee> = delta_ij  =>  omega_j^vee coords form row j of A^{-1}
    coweights = tuple(tuple(a_inv[j][k] for k in range(rank)) for j in range(rank))

    rho = zero_vec(rank)
    for w in weights:
        rho = vec_add(rho, w)
    half_sum = vec_scale(Q(1, 2), tuple(Q(sum(r[i] for r in ordered)) for i in range(rank)))
    if rho != half_sum:
        raise RootSystemError("rho as weight sum disagrees with half-sum of positive roots")

    return FiniteRootSystem(
        series=series,
        rank=rank,
        cartan=cm,
        positive_roots=tuple(ordered),
        highest_root=highest,
        form=form,
        fundamental_weights=weights,
        fundamental_coweights=coweights,
        rho=rho,
        d=d,
        coroot_form=coroot_form,
    )


def mat_for(a) -> Mat:
    return tuple(tuple(Q(e) for e in row) for row in a)


@lru_cache(maxsize=None)
def build_root_system_label(label: str) -> FiniteRootSystem:
    """Cached front door; root systems are immutable, so sharing is safe."""
    return build_root_system(*parse_type(label))


def pairing(rs: FiniteRootSystem, lam: Vec, h: Vec) -> Q:
    return rs.pairing(lam, h)


def weight_in_simple_roots(rs: FiniteRootSystem, i: int) -> Vec:
    """Expansion of omega_i in simple roots; strictly positive entrywise."""
    w = rs.fundamental_weights[i]
    if any(c <= 0 for c in w):
        raise RootSystemError("fundamental weight with nonpositive simple-root coefficient")
    return w

"""Affine Weyl group in canonical semidirect coordinates.

An element is stored as a pair ``(tilde, b)`` with ``tilde`` in the classical
Weyl group and ``b`` in the coroot lattice, realizing ``w = tilde . T_b``
under *function composition*: acting on a weight, the translation ``T_b``
(``lam -> lam + <lam, b> iota`` on classical weights) applies first and the
classical part second.  The two product forms are interchangeable through
``T_{tilde b} tilde = tilde T_b``; which of the paper-style forms the stored
pair feeds into each formula below is pinned down by the executable ground
truths (BFS word length and the duality of the two actions), and is covered
by tests rather than trusted from notation.

Group law and inverse in canonical coordinates:

    (u, a) * (v, b) = (u v, v^{-1} a + b)        (u, a)^{-1} = (u^{-1}, -u a)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache

from .affine import AffineRoot, AffineWeight, CartanElement, affine_pairing, affine_simple_coroots, affine_simple_roots
from .cartan import FiniteRootSystem, RootSystemError, Weight
from .linalg import Vec, mat_inverse, mat_mul, transpose, vec, vec_add, vec_scale

IntVec = tuple[int, ...]
IntMat = tuple[tuple[int, ...], ...]


class EnumerationLimit(RuntimeError):
    """BFS element cap exceeded."""


class ScanBoundError(RuntimeError):
    """The |n| <= l(w)+2 scan window missed inverted roots; convention bug."""


@dataclass(frozen=True)
class FiniteWeylElement:
    """Classical Weyl element as its integer matrix on simple-root coordinates."""

    matrix: IntMat

    def apply_root(self, beta) -> IntVec:
        return tuple(sum(self.matrix[i][j] * beta[j] for j in range(len(beta))) for i in range(len(self.matrix)))

    def apply_weight(self, coords: Vec) -> Vec:
        return tuple(sum((Q(self.matrix[i][j]) * coords[j] for j in range(len(coords))), Q(0)) for i in range(len(self.matrix)))


def finite_identity(rank: int) -> FiniteWeylElement:
    return FiniteWeylElement(tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)))


@lru_cache(maxsize=None)
def finite_simple_reflection(rs: FiniteRootSystem, i: int) -> FiniteWeylElement:
    """Root-coordinate matrix of s_i: (s_i lam)_i = lam_i - sum_j a[i][j] lam_j."""
    n = rs.rank
    a = rs.cartan.entries
    rows = []
    for k in range(n):
        row = [1 if k == j else 0 for j in range(n)]
        if k == i:
            row = [row[j] - a[i][j] for j in range(n)]
        rows.append(tuple(row))
    return FiniteWeylElement(tuple(rows))


@lru_cache(maxsize=None)
def _int_inverse(matrix: IntMat) -> IntMat:
    inv = mat_inverse(tuple(tuple(Q(e) for e in row) for row in matrix))
    return tuple(tuple(int(e) for e in row) for row in inv)


@lru_cache(maxsize=None)
def _coroot_matrix(rs: FiniteRootSystem, matrix: IntMat) -> IntMat:
    """Coroot-coordinate action (A M^{-1} A^{-1})^T of the element with root
    matrix M; integral because the coroot lattice is preserved."""
    a = tuple(tuple(Q(e) for e in row) for row in rs.cartan.entries)
    m_inv = tuple(tuple(Q(e) for e in row) for row in _int_inverse(matrix))
    prod = mat_mul(mat_mul(a, m_inv), mat_inverse(a))
    out = transpose(prod)
    return tuple(tuple(int(e) for e in row) for row in out)


@dataclass(frozen=True)
class AffineWeylElement:
    """Canonical pair (tilde, b); equality and hash use only the pair."""

    tilde: FiniteWeylElement
    b: IntVec
    word: tuple[int, ...] | None = field(default=None, compare=False)
    length: int | None = field(default=None, compare=False)

    def sort_key(self):
        return (self.b, self.tilde.matrix)


def identity_element(rs: FiniteRootSystem) -> AffineWeylElement:
    return AffineWeylElement(finite_identity(rs.rank), (0,) * rs.rank, word=(), length=0)


def generator(rs: FiniteRootSystem, i: int) -> AffineWeylElement:
    """Simple reflection w_i, 1-based; w_{l+1} has canonical pair (s_{a0}, h_{a0})."""
    if not 1 <= i <= rs.rank + 1:
        raise RootSystemError(f"reflection index {i} out of range")
    if i <= rs.rank:
        return AffineWeylElement(finite_simple_reflection(rs, i - 1), (0,) * rs.rank, word=(i,), length=1)
    h0 = tuple(int(x) for x in rs.coroot_of(rs.highest_root))
    # s_{a0} on root coordinates: lam -> lam - <lam, h_{a0}> a0
    a = rs.cartan.entries
    n = rs.rank
    rows = []
    for k in range(n):
        row = []
        for j in range(n):
            pair_j = sum(a[t][j] * h0[t] for t in range(n))  # <alpha_j, h_{a0}>
            row.append((1 if k == j else 0) - rs.highest_root[k] * pair_j)
        rows.append(tuple(row))
    return AffineWeylElement(FiniteWeylElement(tuple(rows)), h0, word=(i,), length=1)


def multiply(rs: FiniteRootSystem, u: AffineWeylElement, v: AffineWeylElement) -> AffineWeylElement:
    vt_inv = _coroot_matrix(rs, _int_inverse(v.tilde.matrix))
    b = tuple(x + y for x, y in zip(mat_vec_int(vt_inv, u.b), v.b))
    return AffineWeylElement(FiniteWeylElement(mat_mul_int(u.tilde.matrix, v.tilde.matrix)), b)


def inverse(rs: FiniteRootSystem, w: AffineWeylElement) -> AffineWeylElement:
    t_inv = _int_inverse(w.tilde.matrix)
    cor = _coroot_matrix(rs, w.tilde.matrix)
    return AffineWeylElement(FiniteWeylElement(t_inv), tuple(-x for x in mat_vec_int(cor, w.b)))


def mat_vec_int(m: IntMat, x: IntVec) -> IntVec:
    return tuple(sum(m[i][j] * x[j] for j in range(len(x))) for i in range(len(m)))


def mat_mul_int(a: IntMat, b: IntMat) -> IntMat:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def pair_int(rs: FiniteRootSystem, beta, h) -> int:
    """<beta, h> for integer root and coroot-coordinate vectors."""
    a = rs.cartan.entries
    return sum(h[j] * sum(a[j][i] * beta[i] for i in range(rs.rank)) for j in range(rs.rank))


# ---------------------------------------------------------------------------
# actions


def reflect(rs: FiniteRootSystem, i: int, lam: AffineWeight) -> AffineWeight:
    """Simple affine reflection on the dual space: lam - <lam, h_i> a_i."""
    if not 1 <= i <= rs.rank + 1:
        raise RootSystemError(f"reflection index {i} out of range")
    h_i = affine_simple_coroots(rs)[i - 1]
    a_i = affine_simple_roots(rs)[i - 1].to_weight()
    return lam - affine_pairing(rs, lam, h_i) * a_i


def act_on_root(rs: FiniteRootSystem, w: AffineWeylElement, a: AffineRoot) -> AffineRoot:
    """w(beta + n iota) = tilde(beta) + (n + <beta, b>) iota; iota-multiples are fixed."""
    if a.is_imaginary:
        return a
    beta = a.classical_part
    return AffineRoot(w.tilde.apply_root(beta), a.n + pair_int(rs, beta, w.b))


def act_on_weight(rs: FiniteRootSystem, w: AffineWeylElement, lam: AffineWeight) -> AffineWeight:
    """Action on the full dual space, dual to :func:`act_on_cartan`.

    The Lambda coefficient is invariant; the classical part picks up
    -lam_Lambda nu(tilde b) and the iota coefficient gains
    <lam_cl, b> - lam_Lambda (b,b)/2.
    """
    cor = _coroot_matrix(rs, w.tilde.matrix)
    tb = mat_vec_int(cor, w.b)
    cl = w.tilde.apply_weight(lam.classical.coords)
    if lam.lam != 0:
        cl = vec_add(cl, vec_scale(-lam.lam, rs.coweight_vector(vec(tb))))
    bb = rs.coroot_pair_form(vec(w.b), vec(w.b))
    iota = lam.iota + rs.pairing(lam.classical.coords, vec(w.b)) - lam.lam * bb / 2
    return AffineWeight(Weight(cl), iota, lam.lam)


def act_on_cartan(rs: FiniteRootSystem, w: AffineWeylElement, x: CartanElement) -> CartanElement:
    """w (m h_iota + h + r D) = [-r(b,b)/2 + (h,b) + m] h_iota - r tilde(b) + tilde(h) + r D."""
    cor = _coroot_matrix(rs, w.tilde.matrix)
    h, m, r = x.classical, x.h_iota, x.d
    bb = rs.coroot_pair_form(vec(w.b), vec(w.b))
    hb = rs.coroot_pair_form(h, vec(w.b))
    tb = vec(mat_vec_int(cor, w.b))
    th = tuple(sum((Q(cor[i][j]) * h[j] for j in range(rs.rank)), Q(0)) for i in range(rs.rank))
    classical = vec_add(vec_scale(-r, tb), th)
    return CartanElement(classical, -r * bb / 2 + hb + m, r)


# ---------------------------------------------------------------------------
# words, length, enumeration


def from_word(rs: FiniteRootSystem, word) -> AffineWeylElement:
    """Canonical form recovered from the action on classical simple roots.

    Applying the word's reflections to each alpha_i gives
    ``w alpha_i = tilde(alpha_i) + <alpha_i, b> iota``; the classical parts
    assemble the matrix of tilde and the iota coefficients determine b through
    the fundamental coweights.  Raises if b lands outside the coroot lattice.
    """
    word = tuple(int(i) for i in word)
    cols = []
    iotas = []
    for k in range(rs.rank):
        mu = AffineRoot(tuple(1 if j == k else 0 for j in range(rs.rank)), 0).to_weight()
        for letter in reversed(word):
            mu = reflect(rs, letter, mu)
        if any(c.denominator != 1 for c in mu.classical.coords) or mu.iota.denominator != 1 or mu.lam != 0:
            raise RootSystemError("word action left the root lattice; convention bug")
        cols.append(tuple(int(c) for c in mu.classical.coords))
        iotas.append(int(mu.iota))
    matrix = tuple(tuple(cols[k][i] for k in range(rs.rank)) for i in range(rs.rank))
    b = (Q(0),) * rs.rank
    for k, n_k in enumerate(iotas):
        b = vec_add(b, vec_scale(n_k, rs.fundamental_coweights[k]))
    if any(x.denominator != 1 for x in b):
        raise RootSystemError(f"translation part {b} not in the coroot lattice; convention bug")
    elem = AffineWeylElement(FiniteWeylElement(matrix), tuple(int(x) for x in b))
    length = length_im(rs, elem)
    return AffineWeylElement(elem.tilde, elem.b, word=word if len(word) == length else None, length=length)


def length_im(rs: FiniteRootSystem, w: AffineWeylElement) -> int:
    """Iwahori-Matsumoto length from the canonical pair:

        l(w) = sum over alpha > 0 of |<alpha, b> - chi_neg(tilde alpha)|.

    Derivation for the stored w = tilde . T_b, by counting inverted roots per
    classical-root string: a positive root beta + n iota is inverted iff
    n < <beta, tilde b>, with one boundary case at equality decided by the
    sign of tilde^{-1} beta; summing both strings +-beta collapses to
    |<beta, tilde b> + chi_neg(tilde^{-1} beta)|, which after the substitution
    beta -> tilde(alpha) is the formula above.  Matches BFS depth; the
    chi(tilde^{-1} alpha) variant matches only in rank 1 where every
    classical element is an involution.
    """
    total = 0
    for alpha in rs.positive_roots:
        chi = 1 if any(c < 0 for c in w.tilde.apply_root(alpha)) else 0
        total += abs(pair_int(rs, alpha, w.b) - chi)
    return total


def enumerate_by_length(rs: FiniteRootSystem, max_len: int, cap: int = 10**7) -> list[list[AffineWeylElement]]:
    """BFS layers of the affine Weyl group up to the given length.

    Deterministic: each layer is sorted by canonical key.  Every element
    carries its BFS word (reduced by construction) and depth as length.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    gens = [generator(rs, i) for i in range(1, rs.rank + 2)]
    identity = identity_element(rs)
    seen = {(identity.tilde, identity.b)}
    layers = [[identity]]
    total = 1
    for depth in range(1, max_len + 1):
        nxt = {}
        for w in layers[depth - 1]:
            for i, g in enumerate(gens, start=1):
                prod = multiply(rs, w, g)
                key = (prod.tilde, prod.b)
                if key in seen or key in nxt:
                    continue
                nxt[key] = AffineWeylElement(prod.tilde, prod.b, word=w.word + (i,), length=depth)
        layer = sorted(nxt.values(), key=AffineWeylElement.sort_key)
        total += len(layer)
        if total > cap:
            raise EnumerationLimit(f"enumeration exceeded cap of {cap} elements")
        seen.update(nxt.keys())
        layers.append(layer)
    return layers


def reduced_word(rs: FiniteRootSystem, w: AffineWeylElement) -> tuple[int, ...]:
    """Reduced word via right-descent peeling: i is a descent iff w(a_i) < 0."""
    if w.word is not None:
        return w.word
    simples = affine_simple_roots(rs)
    letters: list[int] = []
    cur = w
    cur_len = length_im(rs, cur)
    while cur_len > 0:
        for i in range(1, rs.rank + 2):
            img = act_on_root(rs, cur, simples[i - 1])
            if not img.is_positive(rs):
                cur = multiply(rs, cur, generator(rs, i))
                letters.append(i)
                cur_len -= 1
                break
        else:
            raise RootSystemError("no descent found; convention bug")
    return tuple(reversed(letters))


# ---------------------------------------------------------------------------
# inverted root sets


@dataclass(frozen=True)
class InvertedRootSet:
    owner: AffineWeylElement
    roots: tuple[AffineRoot, ...]


def inverted_roots_word(rs: FiniteRootSystem, w: AffineWeylElement) -> InvertedRootSet:
    """Reduced-word construction: with w = g_{m_1} ... g_{m_r}, the inverted
    set is {prefix_{k-1}(a_{m_k})} where prefix_k is the product of the first
    k letters."""
    word = reduced_word(rs, w)
    simples = affine_simple_roots(rs)
    out = []
    prefix = identity_element(rs)
    for k, letter in enumerate(word):
        beta = act_on_root(rs, prefix, simples[letter - 1])
        out.append(beta)
        prefix = multiply(rs, prefix, generator(rs, letter))
    roots = tuple(sorted(out, key=lambda a: (a.n, a.classical_part)))
    if len(set(roots)) != len(word):
        raise RootSystemError("word construction produced repeated inverted roots")
    return InvertedRootSet(w, roots)


def inverted_roots_scan(rs: FiniteRootSystem, w: AffineWeylElement) -> InvertedRootSet:
    """Scan construction: positive real roots beta + n iota, 0 <= n <= l(w)+2,
    sent negative by w^{-1}.  The count must equal l(w)."""
    ell = w.length if w.length is not None else length_im(rs, w)
    w_inv = inverse(rs, w)
    out = []
    all_roots = list(rs.positive_roots) + [tuple(-c for c in r) for r in rs.positive_roots]
    for n in range(0, ell + 3):
        for beta in all_roots:
            if n == 0 and any(c < 0 for c in beta):
                continue
            cand = AffineRoot(beta, n)
            img = act_on_root(rs, w_inv, cand)
            if not img.is_positive(rs):
                out.append(cand)
    if len(out) != ell:
        raise ScanBoundError(f"scan found {len(out)} inverted roots, expected {ell}")
    return InvertedRootSet(w, tuple(sorted(out, key=lambda a: (a.n, a.classical_part))))


def inverted_roots(rs: FiniteRootSystem, w: AffineWeylElement, method: str = "word") -> InvertedRootSet:
    if method == "word":
        return inverted_roots_word(rs, w)
    if method == "scan":
        return inverted_roots_scan(rs, w)
    raise ValueError(f"unknown method {method!r}")


def neg_inverted(rs: FiniteRootSystem, w: AffineWeylElement) -> tuple[AffineRoot, ...]:
    """The set w^{-1} . Delta_w of negative roots made positive by w."""
    inv = inverse(rs, w)
    flipped = [act_on_root(rs, inv, a) for a in inverted_roots_scan(rs, w).roots]
    return tuple(sorted(flipped, key=lambda a: (a.n, a.classical_part)))


def neg_inverted_of_inverse(rs: FiniteRootSystem, w: AffineWeylElement) -> tuple[AffineRoot, ...]:
    """Delta_{-, w^{-1}} = w . Delta_{w^{-1}}: support of the H1 coefficients."""
    return neg_inverted(rs, inverse(rs, w))


def gamma_closed_form_report(rs: FiniteRootSystem, w: AffineWeylElement) -> dict:
    """Compare the two closed forms for the flipped set against the defining
    property.  With my word order, candidate A applies the suffix including
    the k-th letter to a_{m_k}; candidate B negates the strict-suffix image."""
    word = reduced_word(rs, w)
    simples = affine_simple_roots(rs)
    defining = list(neg_inverted(rs, w))
    r = len(word)
    # gamma_k = w^{-1} beta_k = g_{m_r} o ... o g_{m_k} applied to a_{m_k};
    # build the reversed-suffix products accordingly
    suffix = [identity_element(rs)] * (r + 1)
    for k in range(r - 1, -1, -1):
        suffix[k] = multiply(rs, suffix[k + 1], generator(rs, word[k]))
    variant_a = sorted((act_on_root(rs, suffix[k], simples[word[k] - 1]) for k in range(r)),
                       key=lambda a: (a.n, a.classical_part))
    variant_b = sorted((act_on_root(rs, suffix[k + 1], simples[word[k] - 1]).negate() for k in range(r)),
                       key=lambda a: (a.n, a.classical_part))
    return {
        "defining": defining,
        "variant_a_matches": variant_a == defining,
        "variant_b_matches": variant_b == defining,
    }


# ---------------------------------------------------------------------------
# Kostant coset representatives


def is_kostant(rs: FiniteRootSystem, w: AffineWeylElement) -> bool:
    """w lies in the minimal-length coset representatives of W \\ W_affine:
    w^{-1} alpha_i > 0 for every classical simple root."""
    w_inv = inverse(rs, w)
    for i in range(rs.rank):
        a = AffineRoot(tuple(1 if j == i else 0 for j in range(rs.rank)), 0)
        if not act_on_root(rs, w_inv, a).is_positive(rs):
            return False
    return True


def kostant_reps(rs: FiniteRootSystem, layers) -> list[list[AffineWeylElement]]:
    return [[w for w in layer if is_kostant(rs, w)] for layer in layers]


def kappa(rs: FiniteRootSystem, w: AffineWeylElement) -> list[tuple[IntVec, int]]:
    """Decompositions w^{-1} alpha_i = sigma_i + kappa_i iota for i = 1..l."""
    if not is_kostant(rs, w):
        raise RootSystemError("kappa is only defined on Kostant representatives")
    w_inv = inverse(rs, w)
    out = []
    for i in range(rs.rank):
        a = AffineRoot(tuple(1 if j == i else 0 for j in range(rs.rank)), 0)
        img = act_on_root(rs, w_inv, a)
        if img.n < 0 or not rs.is_root(img.classical_part):
            raise RootSystemError("kappa decomposition violated; convention bug")
        out.append((img.classical_part, img.n))
    return out

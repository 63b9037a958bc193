"""Finite-dimensional associative algebras given by structure constants,
with linear algebra that stays correct in characteristic p: center, radical,
blocks, simple-module dimensions, scalar extension, bilinear-form rank.

Conventions: mul has shape (n, n, n, k) with b_i b_j = sum_m mul[i,j,m] b_m;
vectors are coordinate rows of shape (n, k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _arrays as ar
from .errors import (
    DimCapExceeded,
    NotAnExtension,
    ShapeMismatch,
    SplittingCapExceeded,
)
from .exactfield import Field, Poly

DIM_CAP = 512
SPLITTING_DEGREE_CAP = 12


class Subspace:
    """A subspace of F^n held as a reduced-row-echelon basis matrix."""

    __slots__ = ("field", "ambient", "basis")

    def __init__(self, field: Field, ambient: int, basis: np.ndarray):
        self.field = field
        self.ambient = ambient
        self.basis = ar.row_space(field, basis) if basis.shape[0] else basis

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, v: np.ndarray) -> bool:
        return ar.in_row_space(self.field, self.basis, v)

    def coords(self, v: np.ndarray):
        return ar.coords_in_row_space(self.field, self.basis, v)


class SCAlgebra:
    """Associative unital algebra over a Field, given by a multiplication
    tensor and a unit vector."""

    def __init__(self, field: Field, mul: np.ndarray, unit: np.ndarray,
                 labels=None, check_shapes: bool = True):
        mul = ar.asarray(field, mul)
        unit = ar.asarray(field, unit)
        n = unit.shape[0]
        if check_shapes and mul.shape != (n, n, n, field.k):
            raise ShapeMismatch(f"mul tensor {mul.shape} vs dim {n}")
        if n > DIM_CAP:
            raise DimCapExceeded(f"dimension {n} exceeds cap {DIM_CAP}")
        self.field = field
        self.dim = n
        self.mul = mul
        self.unit = unit
        self.labels = list(labels) if labels is not None else None

    # -- basic operations ----------------------------------------------------

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of coordinate vectors x, y (n, k)."""
        return self._pair_product(x, y)

    def _pair_product(self, x, y):
        f = self.field
        # contract i then j against the tensor
        t = ar.fmatmul(f, x[None, :, :], self.mul.reshape(self.dim, -1, f.k))
        t = t.reshape(self.dim, self.dim, f.k)
        out = ar.fmatmul(f, y[None, :, :], t)
        return out[0]

    def left_mult_matrix(self, x: np.ndarray) -> np.ndarray:
        """(n, n, k) matrix of y -> x*y acting on coordinate rows: row j is
        the image of b_j."""
        return self._lmat(x)

    def _lmat(self, x):
        f = self.field
        # L[j, m] = sum_i x_i mul[i, j, m]
        out = ar.fmatmul(f, x[None, :, :], self.mul.reshape(self.dim, -1, f.k))
        return out.reshape(self.dim, self.dim, f.k)

    def right_mult_matrix(self, x: np.ndarray) -> np.ndarray:
        f = self.field
        # R[i, m] = sum_j x_j mul[i, j, m]
        t = self.mul.transpose(1, 0, 2, 3).reshape(self.dim, -1, f.k)
        out = ar.fmatmul(f, x[None, :, :], t)
        return out.reshape(self.dim, self.dim, f.k)

    def power(self, x: np.ndarray, e: int) -> np.ndarray:
        result = self.unit.copy()
        base = x
        while e:
            if e & 1:
                result = self._pair_product(result, base)
            base = self._pair_product(base, base)
            e >>= 1
        return result

    def basis_vector(self, i: int) -> np.ndarray:
        v = ar.zeros(self.field, (self.dim,))
        v[i, 0] = 1
        return v

    def scalar_coeff(self, v: np.ndarray):
        """If v is a scalar multiple of the unit, return that (k,) coefficient
        array, else None."""
        f = self.field
        nz = np.flatnonzero(np.any(self.unit, axis=1))
        i = int(nz[0])
        c = ar.fmul(f, v[i][None, :],
                    ar.scalar_inv(f, self.unit[i])[None, :])[0]
        if np.any((v - ar.fmul(f, c[None, None, :], self.unit[None, :, :])[0]) % f.p):
            return None
        return c

    def is_commutative(self) -> bool:
        return not np.any((self.mul - self.mul.transpose(1, 0, 2, 3)) % self.field.p)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        k = self.field.k
        def scal(x):
            return int(x[0]) if k == 1 else [int(c) for c in x]
        out = {
            "field": self.field.to_json(),
            "dim": self.dim,
            "unit": [scal(self.unit[i]) for i in range(self.dim)],
            "mul": [[[scal(self.mul[i, j, m]) for m in range(self.dim)]
                     for j in range(self.dim)] for i in range(self.dim)],
        }
        if self.labels is not None:
            out["labels"] = self.labels
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SCAlgebra":
        f = Field.from_json(data["field"])
        n = int(data["dim"])

        def scal(x):
            return [int(x)] if not isinstance(x, list) else [int(c) for c in x]

        mul = np.array([[[scal(data["mul"][i][j][m]) for m in range(n)]
                         for j in range(n)] for i in range(n)],
                       dtype=np.int64) % f.p
        unit = np.array([scal(data["unit"][i]) for i in range(n)],
                        dtype=np.int64) % f.p
        return cls(f, mul.reshape(n, n, n, f.k), unit.reshape(n, f.k),
                   labels=data.get("labels"))


@dataclass
class BlockReport:
    center_dim: int | None = None
    radical_dim: int | None = None
    semisimple: bool | None = None
    blocks: list[int] | None = None
    simple_dims: list[int] | None = None
    splitting_degree: int | None = None

    def to_json(self) -> dict:
        return {
            "center_dim": self.center_dim,
            "radical_dim": self.radical_dim,
            "semisimple": self.semisimple,
            "blocks": self.blocks,
            "simple_dims": self.simple_dims,
            "splitting_degree": self.splitting_degree,
        }


@dataclass
class BilForm:
    field: Field
    matrix: np.ndarray  # (n, n, k)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def algebra_verify(A: SCAlgebra, max_reports: int = 20) -> list[str]:
    """Empty iff associativity and the unit axioms hold; otherwise a list of
    violated triples/indices."""
    f = A.field
    n = A.dim
    out = []
    uL = A._lmat(A.unit)
    uR = A.right_mult_matrix(A.unit)
    eye = ar.zeros(f, (n, n))
    for i in range(n):
        eye[i, i, 0] = 1
    if np.any((uL - eye) % f.p):
        out.append("unit: left multiplication by the unit is not the identity")
    if np.any((uR - eye) % f.p):
        out.append("unit: right multiplication by the unit is not the identity")
    # associativity, one defect tensor slice at a time to bound memory
    mulflat = A.mul.reshape(n, -1, f.k)
    for i in range(n):
        # lhs[j,k',m] = sum_t mul[i,j,t] mul[t,k',m]
        lhs = ar.fmatmul(f, A.mul[i], mulflat).reshape(n, n, n, f.k)
        # rhs[j,k',m] = sum_t mul[j,k',t] mul[i,t,m]
        rhs = ar.fmatmul(f, A.mul[:, :, :, :].reshape(-1, n, f.k).reshape(n * n, n, f.k),
                         A.mul[i]).reshape(n, n, n, f.k)
        bad = np.argwhere(np.any((lhs - rhs) % f.p, axis=3))
        for j, kk, _ in bad[:1]:
            out.append(f"associativity violated at triple ({i},{int(j)},{int(kk)})")
            break
        if len(out) >= max_reports:
            out.append("... further violations suppressed")
            return out
    return out


# ---------------------------------------------------------------------------
# center / radical
# ---------------------------------------------------------------------------

def center(A: SCAlgebra) -> Subspace:
    """Solution space of [x, b_i] = 0 for all basis elements."""
    f = A.field
    n = A.dim
    # constraint on x: sum_j x_j (mul[j,i,m] - mul[i,j,m]) = 0 for all (i,m),
    # imposed one basis element at a time so the working space shrinks early
    K = (A.mul.transpose(1, 0, 2, 3) - A.mul) % f.p  # K[i][j, m], rows j
    basis = ar.zeros(f, (n, n))
    basis[np.arange(n), np.arange(n), 0] = 1
    for i in range(n):
        if basis.shape[0] == 0:
            break
        img = ar.fmatmul(f, basis, K[i])  # (d, n, k): [x, b_i] for span rows
        if not np.any(img):
            continue
        coeffs = ar.nullspace(f, img.transpose(1, 0, 2))
        if coeffs.shape[0] == basis.shape[0]:
            continue
        basis = ar.row_space(f, ar.fmatmul(f, coeffs, basis))
    return Subspace(f, n, basis)


def _restrict_scalars(A: SCAlgebra):
    """View A over F_{p^k} as an algebra over F_p of dimension n*k.

    Returns (B, to_base, from_base) where to_base maps an (n, k) vector to an
    (n*k, 1) vector and from_base inverts it.
    """
    f = A.field
    p, k, n = f.p, f.k, A.dim
    if k == 1:
        return A, (lambda v: v), (lambda v: v)
    prime = Field(p)
    # basis b_i t^a ; index i*k + a
    # (b_i t^a)(b_j t^b) = sum_m mul[i,j,m] t^(a+b) b_m
    red = f._red  # (2k-1, k)
    mul = np.zeros((n * k, n * k, n * k, 1), dtype=np.int64)
    for a in range(k):
        for b in range(k):
            # t^(a+b) coefficient vector
            tv = red[a + b]  # (k,)
            # coeff of b_m t^c : sum over products mul[i,j,m] (coeff vec) * tv
            # mul[i,j,m] is a poly in t of degree < k: multiply by tv (poly)
            for c1 in range(k):
                if not np.any(A.mul[..., c1]):
                    continue
                for c2 in range(k):
                    if tv[c2] == 0:
                        continue
                    contrib = (A.mul[..., c1] * int(tv[c2])) % p
                    # t^(c1+c2) reduces again
                    rv = red[c1 + c2]
                    for c3 in range(k):
                        if rv[c3]:
                            mul[a::k, b::k, c3::k, 0] = (
                                mul[a::k, b::k, c3::k, 0]
                                + contrib * int(rv[c3])) % p
    unit = A.unit.reshape(n * k, 1).astype(np.int64)
    B = SCAlgebra(prime, mul, unit)

    def to_base(v):
        return v.reshape(n * k, 1)

    def from_base(v):
        return v.reshape(n, k)

    return B, to_base, from_base


def _radical_prime(A: SCAlgebra) -> np.ndarray:
    """Radical of an algebra over a prime field, by generalized trace maps
    valid in characteristic p (iterated p-power trace corrections)."""
    f = A.field
    p, n = f.p, A.dim
    # integer lifts of left-multiplication matrices of the basis
    # left multiplication by basis vector i is the slice mul[i] as [j, m]
    lmats = A.mul[:, :, :, 0].transpose(0, 2, 1).copy()  # (i, m, j)
    # columns act on column vectors: (L x)_m = sum_j L[m,j] x_j

    space = ar.zeros(f, (n, n))
    for i in range(n):
        space[i, i, 0] = 1  # current ideal, rref rows

    def f_i_values(vecs, i):
        """(Tr(lift(L_vec)^(p^i)) / p^i) mod p for each row of vecs (d, n, 1)."""
        Ls = np.tensordot(vecs[:, :, 0], lmats, axes=([1], [0]))  # (d, n, n)
        mod = p ** (i + 1)
        out = []
        for L in Ls % mod:
            W = L
            for _ in range(i):
                W = _int_matrix_power(W, p, mod)
            tr = int(np.trace(W)) % mod
            assert tr % (p ** i) == 0, "generalized trace not divisible"
            out.append((tr // (p ** i)) % p)
        return out

    # the chain stabilizes at the radical after l+1 refinements where
    # p^l <= n < p^(l+1)
    l = 0
    while p ** (l + 1) <= n:
        l += 1
    for level in range(l + 1):
        d = space.shape[0]
        if d == 0:
            break
        # the level map is additive and F_p-linear on the current ideal, so
        # evaluating it on the ideal basis determines all constraint entries
        vals = f_i_values(space, level)
        # all products space[r] * b_s at once: prods[r, s, m]
        prods = ar.fmatmul(f, space, A.mul.reshape(n, n * n, 1))
        prods = prods.reshape(d, n, n, 1)
        cc = ar.coords_in_row_space_many(f, space, prods.reshape(d * n, n, 1))
        if cc is None:
            raise RuntimeError("trace-chain space is not an ideal")
        coords = cc.reshape(d, n, d, 1)[:, :, :, 0]  # (r, s, t): ideal coords
        valv = np.array(vals, dtype=np.int64)
        # constraint per s on unknowns r: sum_t coords[r, s, t] vals[t]
        M = (np.tensordot(coords, valv, axes=([2], [0])) % p).T[:, :, None]
        ker = ar.nullspace(f, M)  # coordinates in the ideal basis
        if ker.shape[0] == 0:
            space = ar.zeros(f, (0, n))
            break
        space = ar.row_space(f, ar.fmatmul(f, ker, space))
    return space


def _int_matrix_power(W, e, mod):
    out = np.eye(W.shape[0], dtype=np.int64)
    base = W % mod
    while e:
        if e & 1:
            out = (out @ base) % mod
        base = (base @ base) % mod
        e >>= 1
    return out


def radical(A: SCAlgebra) -> Subspace:
    """The Jacobson radical, computed by a positive-characteristic-correct
    generalized-trace chain over the prime field."""
    f = A.field
    B, to_base, from_base = _restrict_scalars(A)
    rad_base = _radical_prime(B)
    if rad_base.shape[0] == 0:
        return Subspace(f, A.dim, ar.zeros(f, (0, A.dim)))
    vecs = np.stack([from_base(rad_base[i]) for i in range(rad_base.shape[0])])
    sub = Subspace(f, A.dim, vecs)
    # sanity: the result must be nilpotent (guards the chain endpoint)
    if not _is_nilpotent_subspace(A, sub.basis):
        raise RuntimeError("radical chain produced a non-nilpotent space")
    return sub


def _product_space(A: SCAlgebra, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    if U.shape[0] == 0 or V.shape[0] == 0:
        return ar.zeros(A.field, (0, A.dim))
    prods = []
    for i in range(U.shape[0]):
        for j in range(V.shape[0]):
            prods.append(A._pair_product(U[i], V[j]))
    return ar.row_space(A.field, np.stack(prods))


def _is_nilpotent_subspace(A: SCAlgebra, basis: np.ndarray) -> bool:
    cur = basis
    for _ in range(A.dim + 1):
        if cur.shape[0] == 0:
            return True
        cur = _product_space(A, cur, basis)
    return False


def is_ideal(A: SCAlgebra, sub: Subspace) -> bool:
    for i in range(A.dim):
        b = A.basis_vector(i)
        for j in range(sub.dim):
            if not sub.contains(A._pair_product(b, sub.basis[j])):
                return False
            if not sub.contains(A._pair_product(sub.basis[j], b)):
                return False
    return True


# ---------------------------------------------------------------------------
# quotients / subalgebras
# ---------------------------------------------------------------------------

def quotient_algebra(A: SCAlgebra, ideal: Subspace):
    """(B, proj) with B = A/ideal and proj an (n, m, k) matrix sending
    coordinates of A onto coordinates of B (rows act from the left:
    image = v @ proj)."""
    f = A.field
    n = A.dim
    I = ideal.basis
    pivots = set(ar._pivot_columns(I)) if I.shape[0] else set()
    complement = [c for c in range(n) if c not in pivots]
    m = len(complement)
    # reduction of an arbitrary vector mod the ideal: subtract pivot rows
    proj = ar.zeros(f, (n, m))
    for idx, c in enumerate(complement):
        proj[c, idx, 0] = 1
    if I.shape[0]:
        for rrow, pc in enumerate(ar._pivot_columns(I)):
            # b_pc == -sum over complement of I[rrow, c] b_c (mod ideal)
            for idx, c in enumerate(complement):
                proj[pc, idx] = (-I[rrow, c]) % f.p
    lifts = ar.zeros(f, (m, n))
    for idx, c in enumerate(complement):
        lifts[idx, c, 0] = 1
    X = ar.fmatmul(f, lifts, A.mul.reshape(n, n * n, f.k)).reshape(m, n, n, f.k)
    if m:
        mul = np.stack([ar.fmatmul(f, ar.fmatmul(f, lifts, X[i]), proj)
                        for i in range(m)])
    else:
        mul = np.zeros((0, 0, 0, f.k), dtype=np.int64)
    unit = ar.fmatmul(f, A.unit[None, :, :], proj)[0]
    B = SCAlgebra(f, mul, unit)
    return B, proj


def subalgebra_on(A: SCAlgebra, sub: Subspace, unit_vec: np.ndarray | None = None):
    """Subalgebra structure on a multiplicatively closed subspace; returns
    (B, basis) where basis rows are the chosen basis inside A.  unit_vec
    defaults to A's unit (which must lie in the subspace)."""
    f = A.field
    basis = sub.basis
    m = basis.shape[0]
    if unit_vec is None:
        unit_vec = A.unit
    ucoords = ar.coords_in_row_space(f, basis, unit_vec)
    if ucoords is None:
        raise ShapeMismatch("unit does not lie in the subspace")
    n = A.dim
    # batch the pairwise products: X[i, b] = coords of b_i e_b in A, then
    # prods[i, j] = coords of b_i b_j
    X = ar.fmatmul(f, basis, A.mul.reshape(n, n * n, f.k)).reshape(m, n, n, f.k)
    prods = np.stack([ar.fmatmul(f, basis, X[i]) for i in range(m)])
    coords = ar.coords_in_row_space_many(f, basis, prods.reshape(m * m, n, f.k))
    if coords is None:
        raise ShapeMismatch("subspace is not multiplicatively closed")
    mul = coords.reshape(m, m, m, f.k)
    B = SCAlgebra(f, mul, ucoords)
    return B, basis


# ---------------------------------------------------------------------------
# blocks
# ---------------------------------------------------------------------------

def _nilradical_commutative(C: SCAlgebra) -> Subspace:
    """Nilpotent elements of a commutative algebra: kernel of the additive
    p^m-power map, m minimal with p^m >= dim."""
    f = C.field
    p, n = f.p, C.dim
    m = 0
    while p ** m < max(n, 2):
        m += 1
    B, to_base, from_base = _restrict_scalars(C)
    N = B.dim
    cols = []
    for i in range(N):
        v = B.basis_vector(i)
        cols.append(B.power(v, p ** m))
    # solve sum x_i (b_i)^(p^m) -- the map is additive, F_p-linear in x
    M = np.stack(cols).transpose(1, 0, 2)  # rows: output coord, cols: i
    ker = ar.nullspace(B.field, M)
    if ker.shape[0] == 0:
        return Subspace(f, n, ar.zeros(f, (0, n)))
    vecs = np.stack([from_base(ker[i]) for i in range(ker.shape[0])])
    return Subspace(f, n, vecs)


def _primitive_idempotents_split_commutative(E: SCAlgebra):
    """Primitive idempotents of a commutative semisimple algebra all of whose
    residue fields equal the base field (so minimal polynomials split into
    distinct linear factors)."""
    f = E.field
    # represent each component by (basis rows inside E, unit vector inside E)
    full = ar.zeros(f, (E.dim, E.dim))
    for i in range(E.dim):
        full[i, i, 0] = 1
    comps = [(full, E.unit)]
    done = []
    while comps:
        basis, unit = comps.pop()
        if basis.shape[0] == 1:
            done.append(unit)
            continue
        split = False
        for gi in range(basis.shape[0]):
            z = basis[gi]
            minpoly = _minimal_polynomial(E, z, unit, basis)
            fac = minpoly.factor()
            if any(g.degree > 1 or m > 1 for g, m in fac):
                raise RuntimeError("component not split semisimple")
            if len(fac) <= 1:
                continue
            for g, _ in fac:
                c = -g.coeffs[0]
                # projector: prod_{c' != c} (z - c' u)/(c - c')
                proj = unit.copy()
                for g2, _ in fac:
                    c2 = -g2.coeffs[0]
                    if c2 == c:
                        continue
                    diff = (z - ar.fmul(f, np.array(c2.coeffs)[None, :],
                                        unit)) % f.p
                    scale = (c - c2).inverse()
                    diff = ar.fmul(f, np.array(scale.coeffs)[None, :], diff)
                    proj = E._pair_product(proj, diff)
                # new component: proj * (old basis)
                vecs = np.stack([E._pair_product(proj, basis[t])
                                 for t in range(basis.shape[0])])
                nb = ar.row_space(f, vecs)
                comps.append((nb, proj))
            split = True
            break
        if not split:
            raise RuntimeError("no basis element splits a non-local component")
    return done


def _minimal_polynomial(A: SCAlgebra, z: np.ndarray, unit: np.ndarray,
                        space: np.ndarray) -> Poly:
    """Minimal polynomial of multiplication by z on the unital component
    spanned by `space` (rref rows), with identity `unit`."""
    f = A.field
    powers = [unit]
    cur = unit
    while True:
        cur = A._pair_product(cur, z)
        stacked = np.stack(powers + [cur])
        R, piv = ar.rref(f, stacked)
        if R.shape[0] < len(powers) + 1:
            # dependence: solve for coefficients
            M = np.stack(powers).transpose(1, 0, 2)
            sol = ar.solve(f, M, cur)
            assert sol is not None
            coeffs = [-ar.scalar_of(f, sol[i]) for i in range(len(powers))]
            coeffs.append(f.one)
            return Poly(f, coeffs)
        powers.append(cur)
        if len(powers) > space.shape[0] + 1:
            raise RuntimeError("minimal polynomial search exceeded dimension")


def central_idempotents(A: SCAlgebra) -> list[np.ndarray]:
    """Complete list of orthogonal primitive central idempotents, summing to
    the unit, ordered by their coordinate vectors."""
    f = A.field
    Z = center(A)
    ZA, zbasis = subalgebra_on(A, Z)
    NZ = _nilradical_commutative(ZA)
    B, proj = quotient_algebra(ZA, NZ)
    # fixed points of the q-power Frobenius on B (q = |base field|)
    q = f.order
    n = B.dim
    cols = []
    for i in range(n):
        v = B.basis_vector(i)
        cols.append((B.power(v, q) - v) % f.p)
    M = np.stack(cols).transpose(1, 0, 2)
    # x -> x^q is base-field linear on a commutative algebra over F_q
    fixed = ar.nullspace(f, M)
    EA, ebasis = subalgebra_on(B, Subspace(f, B.dim, fixed))
    prims_E = _primitive_idempotents_split_commutative(EA)
    # map back from E coords to B coords
    prims_B = [ar.fmatmul(f, e[None, :, :], ebasis)[0] for e in prims_E]
    # lift to Z through the quotient: pick any preimage, then p-power until
    # idempotent (valid in characteristic p for commutative algebras)
    idems = []
    for eb in prims_B:
        lift = ar.solve(f, proj.transpose(1, 0, 2), eb)
        assert lift is not None
        e = lift
        for _ in range(2 * (ZA.dim + 2)):
            if not np.any((ZA._pair_product(e, e) - e) % f.p):
                break
            e = ZA.power(e, f.p)
        else:
            raise RuntimeError("idempotent lifting did not converge")
        # into A coordinates
        idems.append(ar.fmatmul(f, e[None, :, :], zbasis)[0])
    idems.sort(key=lambda v: v.reshape(-1).tolist())
    return idems


def block_decompose(A: SCAlgebra) -> BlockReport:
    """Blocks of A: dimensions of the two-sided ideals cut out by the
    primitive central idempotents, in deterministic order."""
    f = A.field
    idems = central_idempotents(A)
    dims = []
    for e in idems:
        L = A._lmat(e)
        dims.append(ar.rank(f, L))
    rep = BlockReport(center_dim=center(A).dim, blocks=dims)
    total = sum(dims)
    if total != A.dim:
        raise RuntimeError(f"block dimensions {dims} do not sum to {A.dim}")
    return rep


def block_ideals(A: SCAlgebra):
    """The block ideals as unital subalgebras: list of (B, basis, idempotent)."""
    out = []
    for e in central_idempotents(A):
        L = A._lmat(e)
        basis = ar.row_space(A.field, L)
        B, bas = subalgebra_on(A, Subspace(A.field, A.dim, basis), unit_vec=e)
        out.append((B, bas, e))
    return out


# ---------------------------------------------------------------------------
# scalar extension and simples
# ---------------------------------------------------------------------------

def extend_scalars(A: SCAlgebra, big: Field) -> SCAlgebra:
    f = A.field
    if big == f:
        return A
    if big.p != f.p or big.k % f.k != 0:
        raise NotAnExtension(f"{big} does not extend {f}")
    mul = ar.embed_array(f, big, A.mul)
    unit = ar.embed_array(f, big, A.unit)
    return SCAlgebra(big, mul, unit, labels=A.labels)


def simples(A: SCAlgebra, allow_extension: bool = True) -> BlockReport:
    """Dimensions of the simple modules of A over a minimal splitting
    extension, with the extension degree used."""
    f = A.field
    rad = radical(A)
    Asemi, _ = quotient_algebra(A, rad)
    base_blocks = block_ideals(Asemi)
    # each semisimple block is a matrix algebra over its center, which is a
    # finite field; the minimal splitting extension degree is the lcm of the
    # center degrees
    base_cdims = [center(blk).dim for blk, _, _ in base_blocks]
    deg = math.lcm(*base_cdims) if base_cdims else 1
    if deg > 1 and not allow_extension:
        raise SplittingCapExceeded("algebra does not split over its base "
                                   "field and extension is disabled")
    big = f if deg == 1 else Field(f.p, f.k * deg)
    if big.k > SPLITTING_DEGREE_CAP:
        raise SplittingCapExceeded(
            f"splitting needs total degree {big.k}, cap is "
            f"{SPLITTING_DEGREE_CAP}")
    blocks = base_blocks if deg == 1 else block_ideals(extend_scalars(Asemi, big))
    if any(center(blk).dim != 1 for blk, _, _ in blocks):
        raise RuntimeError("predicted splitting extension did not split")
    if any(math.isqrt(blk.dim) ** 2 != blk.dim for blk, _, _ in blocks):
        raise RuntimeError("split block dimension is not a square")
    dims = sorted(math.isqrt(blk.dim) for blk, _, _ in blocks)
    if rad.dim == 0:
        # A equals its semisimple quotient: the blocks and center computed
        # for the quotient are A's own
        base_block_dims = [blk.dim for blk, _, _ in base_blocks]
        center_dim = sum(base_cdims)
    else:
        base_block_dims = block_decompose(A).blocks
        center_dim = center(A).dim
    return BlockReport(
        center_dim=center_dim,
        radical_dim=rad.dim,
        semisimple=rad.dim == 0,
        blocks=base_block_dims,
        splitting_degree=deg,
        simple_dims=dims,
    )


def is_separable(A: SCAlgebra) -> bool:
    """Over a finite (perfect) base field: separable iff the radical vanishes."""
    return radical(A).dim == 0


def separability_idempotent_exists(A: SCAlgebra) -> bool:
    """Independent semisimplicity certificate: solve for e in A (x) A^op with
    (x (x) 1) e = (1 (x) x) e for all x and mu(e) = 1.  Intended for small
    algebras (the system has dim^2 unknowns)."""
    f = A.field
    n = A.dim
    # unknown e[a,b]; constraints per basis x=b_i and output slot (c,d):
    # sum_{a} mul[i,a,c] e[a,d] - sum_b e[c,b] mul[b,i,d] = 0
    rows = []
    for i in range(n):
        L = A.mul[i]          # (a, c, k): b_i b_a coefficients
        R = A.mul[:, i, :, :]  # (b, d, k): b_b b_i coefficients
        # coefficient of e[a,b] in constraint (c,d):
        #   mul[i,a,c] delta_{b,d} - delta_{a,c} mul[b,i,d]
        C = np.zeros((n, n, n, n, f.k), dtype=np.int64)
        for c in range(n):
            C[c, :, c, :, :] -= R.transpose(1, 0, 2)
        Ct = np.zeros_like(C)
        for d in range(n):
            Ct[:, d, :, d, :] += L.transpose(1, 0, 2)
        C = (C + Ct) % f.p
        rows.append(C.reshape(n * n, n * n, f.k))
    # mu(e) = sum_{a,b} e[a,b] b_a b_b = 1
    mu = A.mul.transpose(2, 0, 1, 3).reshape(n, n * n, f.k)
    M = np.concatenate(rows + [mu], axis=0)
    rhs = ar.zeros(f, (M.shape[0],))
    rhs[-n:] = A.unit
    sol = ar.solve(f, M, rhs)
    return sol is not None


# ---------------------------------------------------------------------------
# bilinear forms
# ---------------------------------------------------------------------------

def form_rank(s: BilForm) -> tuple[int, bool]:
    n = s.matrix.shape[0]
    r = ar.rank(s.field, s.matrix)
    return r, r == n


def form_is_symmetric(s: BilForm) -> bool:
    return not np.any((s.matrix - s.matrix.transpose(1, 0, 2)) % s.field.p)

"""Lorentzian linear algebra on R^{1,n}.

Vectors are plain numpy arrays of length ``1 + n`` whose coordinate 0 is the
timelike one; the form is ``<x, y> = x0*y0 - sum_{i>0} xi*yi``.  Sequences of
vectors are stacked as rows of a 2-d array.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, DimensionMismatch, GramMismatch, NotSpacelike

EPS_GRAM = 1e-9
EPS_SIG = 1e-8
EPS_DET = 1e-10


def eta(dim):
    """Matrix of the form, ``diag(1, -1, ..., -1)`` of size ``dim``."""
    d = -np.ones(dim)
    d[0] = 1.0
    return np.diag(d)


def as_vector(x):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] < 2:
        raise DimensionMismatch(f"expected a vector of length >= 2, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("vector has non-finite coordinates")
    return x


def as_sequence(seq):
    seq = np.atleast_2d(np.asarray(seq, dtype=float))
    if seq.ndim != 2 or seq.shape[1] < 2:
        raise DimensionMismatch(f"expected rows of length >= 2, got shape {seq.shape}")
    if not np.all(np.isfinite(seq)):
        raise ValueError("sequence has non-finite coordinates")
    return seq


def lorentz_form(x, y):
    """Bilinear form of signature (1, n).

    Both arguments may be stacks of vectors; the form is taken along the
    last axis and broadcast over the others.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] != y.shape[-1]:
        raise DimensionMismatch(f"dimension mismatch: {x.shape[-1]} != {y.shape[-1]}")
    return x[..., 0] * y[..., 0] - np.sum(x[..., 1:] * y[..., 1:], axis=-1)


def norm2(x):
    """Lorentz norm ``<x, x>`` (may be negative)."""
    return lorentz_form(x, x)


def gram(seq):
    """Gram matrix ``(<w_i, w_j>)_{ij}`` of the rows of ``seq``, exactly symmetric."""
    seq = as_sequence(seq)
    g = seq @ eta(seq.shape[1]) @ seq.T
    upper = np.triu(g)
    return upper + np.triu(g, 1).T


def gram_cross(a, b):
    """Matrix ``(<a_i, b_j>)_{ij}`` between two sequences."""
    a = as_sequence(a)
    b = as_sequence(b)
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatch("sequences live in different dimensions")
    return a @ eta(a.shape[1]) @ b.T


@dataclass(frozen=True)
class Signature:
    s_plus: int
    s_zero: int
    s_minus: int

    def __iter__(self):
        return iter((self.s_plus, self.s_zero, self.s_minus))


def signature_of(g, eps_sig=EPS_SIG):
    """Count positive, zero and negative eigenvalues of a symmetric matrix."""
    g = np.atleast_2d(np.asarray(g, dtype=float))
    w = np.linalg.eigvalsh(g)
    return Signature(
        int(np.sum(w > eps_sig)),
        int(np.sum(np.abs(w) <= eps_sig)),
        int(np.sum(w < -eps_sig)),
    )


def _hadamard_ratio(g):
    """``|det g|`` over the product of its row norms; 0 for singular, 1 for orthogonal rows."""
    rows = np.linalg.norm(g, axis=1)
    if np.any(rows == 0):
        return 0.0
    sign, logdet = np.linalg.slogdet(g)
    if sign == 0:
        return 0.0
    return float(np.exp(logdet - np.sum(np.log(rows))))


def dual_basis(basis, eps_det=EPS_DET):
    """Dual basis ``(v*_j)`` with ``<v*_i, v_j> = delta_ij``.

    Each ``v*_j`` is a combination of the ``v_k`` with coefficients given by
    the inverse Gram matrix, so the result is ``G^{-1} @ basis``.
    """
    basis = as_sequence(basis)
    k, dim = basis.shape
    if k != dim:
        raise DegenerateInput(f"a basis of R^{dim} needs {dim} vectors, got {k}")
    g = gram(basis)
    if _hadamard_ratio(g) <= eps_det:
        raise DegenerateInput("Gram matrix of the basis is singular")
    return np.linalg.solve(g, basis)


def homogeneous_coordinates(p, basis, eps_det=EPS_DET):
    """Coordinates ``lambda_k = <p, v*_k>`` of ``p`` in ``basis``."""
    p = as_vector(p)
    dual = dual_basis(basis, eps_det)
    if dual.shape[1] != p.shape[0]:
        raise DimensionMismatch("point and basis live in different dimensions")
    return lorentz_form(dual, p)


@dataclass(frozen=True)
class HalfSpace:
    """Co-oriented hyperplane ``H_u`` bounding ``{x : <u, x> >= 0}``.

    ``u`` is normalized to ``<u, u> = -1``; its sign is the co-orientation.
    """

    u: np.ndarray

    def __post_init__(self):
        u = as_vector(self.u)
        if abs(norm2(u) + 1.0) > EPS_GRAM * max(1.0, float(np.max(np.abs(u))) ** 2):
            raise NotSpacelike(f"half-space polar must have norm -1, got {norm2(u)}")
        object.__setattr__(self, "u", u)

    @property
    def dim(self):
        return self.u.shape[0] - 1

    def side(self, x):
        """Value of ``<u, x>``; non-negative on the half-space."""
        return lorentz_form(self.u, x)

    def flipped(self):
        return HalfSpace(-self.u)


def polar(u, sign=1):
    """Half-space with polar ``sign * u`` rescaled to norm -1."""
    u = as_vector(u)
    q = norm2(u)
    if not q < 0:
        raise NotSpacelike(f"polar needs a negative-norm vector, got <u,u> = {q}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return HalfSpace(sign * u / np.sqrt(-q))


@dataclass(frozen=True)
class LorentzMap:
    """Linear map of R^{1+n} acting on column vectors (rows of sequences via ``apply``)."""

    matrix: np.ndarray

    def apply(self, x):
        x = np.asarray(x, dtype=float)
        return x @ self.matrix.T

    def form_residual(self):
        m = self.matrix
        e = eta(m.shape[0])
        return float(np.max(np.abs(m.T @ e @ m - e)))

    def preserves_form(self, tol=EPS_GRAM):
        return self.form_residual() <= tol * max(1.0, float(np.max(np.abs(self.matrix))) ** 2)


def _nullspace(a, rank_tol=1e-10):
    """Orthonormal (Euclidean) basis of the kernel of ``a``, as rows."""
    dim = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(dim)
    _, s, vt = np.linalg.svd(a)
    scale = s[0] if s.size and s[0] > 0 else 1.0
    rank = int(np.sum(s > rank_tol * scale))
    return vt[rank:]


def _lorentz_orthonormalize(vectors):
    """Lorentz Gram-Schmidt on a nondegenerate subspace spanned by ``vectors``.

    Pivots are taken timelike first, then by largest ``|norm|``; a subspace
    left with only null vectors is recombined as ``a + b`` or ``a - b``.
    Returns rows with norms +1 or -1 that are pairwise orthogonal.
    """
    rest = [np.array(v, dtype=float) for v in vectors]
    out = []
    while rest:
        norms = np.array([norm2(v) for v in rest])
        scale = max(float(np.max(np.abs(norms))), 0.0)
        mags = np.array([float(np.dot(v, v)) for v in rest])
        ref = max(float(np.max(mags)), 1e-300)
        if scale <= 1e-12 * ref:
            # all remaining vectors are null: combine the pair with largest product
            best, pair = 0.0, None
            for i in range(len(rest)):
                for j in range(i + 1, len(rest)):
                    pij = abs(lorentz_form(rest[i], rest[j]))
                    if pij > best:
                        best, pair = pij, (i, j)
            if pair is None or best <= 1e-12 * ref:
                raise DegenerateInput("complement is degenerate")
            i, j = pair
            rest[i] = rest[i] + np.sign(lorentz_form(rest[i], rest[j])) * rest[j]
            continue
        timelike = [i for i, q in enumerate(norms) if q > 1e-12 * ref]
        if timelike:
            k = max(timelike, key=lambda i: norms[i])
        else:
            k = int(np.argmax(np.abs(norms)))
        v = rest.pop(k)
        v = v / np.sqrt(abs(norm2(v)))
        q = norm2(v)
        out.append(v)
        rest = [w - (lorentz_form(w, v) / q) * v for w in rest]
        rest = [w for w in rest if np.linalg.norm(w) > 1e-12 * np.sqrt(ref)]
    return out


def _complement_frame(seq):
    """Lorentz-orthonormal frame of the orthogonal complement of a nondegenerate span."""
    dim = seq.shape[1]
    kernel = _nullspace(seq @ eta(dim))
    if kernel.shape[0] == 0:
        return []
    return _lorentz_orthonormalize(kernel)


def _independent_rows(seq, rank_tol=1e-10):
    """Indices of a maximal linearly independent subset of rows, greedily in order."""
    chosen = []
    for i in range(seq.shape[0]):
        trial = seq[chosen + [i]]
        s = np.linalg.svd(trial, compute_uv=False)
        if s[-1] > rank_tol * max(s[0], 1e-300):
            chosen.append(i)
    return chosen


def isometry_from_gram(src, dst, eps_gram=EPS_GRAM):
    """Element of GO(1,n) sending ``src[i]`` to ``dst[i]`` for every ``i``.

    Both sequences are completed to bases with equal Gram matrices (a
    Lorentz-orthonormal complement in the nondegenerate case, a hyperbolic
    partner for each radical vector otherwise); the map is then
    ``D @ inv(S)`` on column vectors.
    """
    src = as_sequence(src)
    dst = as_sequence(dst)
    if src.shape != dst.shape:
        raise DimensionMismatch(f"shapes differ: {src.shape} != {dst.shape}")
    dim = src.shape[1]
    gs, gd = gram(src), gram(dst)
    scale = max(1.0, float(np.max(np.abs(gs))), float(np.max(np.abs(gd))))
    if np.max(np.abs(gs - gd)) > eps_gram * scale:
        raise GramMismatch(f"Gram matrices differ by {np.max(np.abs(gs - gd)):.3e}")

    idx = _independent_rows(src)
    s = src[idx]
    d = dst[idx]
    while s.shape[0] < dim:
        g = gram(s)
        w, vecs = np.linalg.eigh(g)
        gscale = max(1.0, float(np.max(np.abs(g))))
        small = np.abs(w) <= 1e-10 * gscale
        if np.any(small):
            coef = vecs[:, int(np.argmin(np.abs(w)))]
            r_src = coef @ s
            r_dst = coef @ d
            # partner x with <x, r> != 0; its mirror image solves a linear system
            e = eta(dim)
            x = e[int(np.argmax(np.abs(r_src @ e)))]
            a = s @ e @ x
            b = norm2(x)
            xp, *_ = np.linalg.lstsq(d @ e, a, rcond=None)
            denom = 2.0 * lorentz_form(xp, r_dst)
            if abs(denom) < 1e-14:
                raise DegenerateInput("cannot complete degenerate span")
            xp = xp + ((b - norm2(xp)) / denom) * r_dst
            s = np.vstack([s, x])
            d = np.vstack([d, xp])
            continue
        cs = _complement_frame(s)
        cd = _complement_frame(d)
        pos_s = [v for v in cs if norm2(v) > 0]
        neg_s = [v for v in cs if norm2(v) < 0]
        pos_d = [v for v in cd if norm2(v) > 0]
        neg_d = [v for v in cd if norm2(v) < 0]
        if len(pos_s) != len(pos_d) or len(neg_s) != len(neg_d):
            raise DegenerateInput("complements have different signatures")
        s = np.vstack([s] + pos_s + neg_s)
        d = np.vstack([d] + pos_d + neg_d)
        break

    if np.linalg.matrix_rank(s) < dim:
        raise DegenerateInput("source sequence cannot be completed to a basis")
    m = np.linalg.solve(s, d).T
    result = LorentzMap(m)
    mapped = result.apply(src)
    tol = eps_gram * max(1.0, float(np.max(np.abs(dst))))
    if np.max(np.abs(mapped - dst)) > 10 * tol:
        raise DegenerateInput(
            f"sequences are not related by an isometry (residual {np.max(np.abs(mapped - dst)):.3e})"
        )
    return result

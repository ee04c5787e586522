"""Finite fields, matrices over them, and the point geometries they act on.

Field elements are integer codes: the element ``c_0 + c_1 x + ... + c_{a-1} x^{a-1}``
of ``GF(p)[x]/(f)`` has code ``c_0 + c_1 p + ... + c_{a-1} p^{a-1}``.  The
modulus ``f`` is the least primitive polynomial of degree ``a`` when monic
polynomials ``x^a + c_{a-1} x^{a-1} + ... + c_0`` are ordered by the tuple
``(c_{a-1}, ..., c_0)``.  For ``a = 1`` this picks the primitive root ``-c_0``.

Matrices act on row vectors, so ``v -> v M`` is a right action and products of
matrices match the left-to-right permutation convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldArithmeticError, GeometryError
from .perm import Permutation, PermGroup

MAX_FIELD_ORDER = 729


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def prime_power(q: int) -> tuple[int, int]:
    """``(p, a)`` with ``q = p^a``; ValueError if ``q`` is not a prime power."""
    fs = prime_factors(q) if q > 1 else []
    if len(fs) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = fs[0]
    a = 0
    while q > 1:
        q //= p
        a += 1
    return p, a


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists lowest degree first


def _trim(f: list[int]) -> list[int]:
    while len(f) > 1 and f[-1] == 0:
        f = f[:-1]
    return f


def poly_mod(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    f = [c % p for c in f]
    g = _trim([c % p for c in g])
    inv_lead = pow(g[-1], p - 2, p)
    while len(f) >= len(g) and any(f):
        f = _trim(f)
        if len(f) < len(g):
            break
        c = f[-1] * inv_lead % p
        shift = len(f) - len(g)
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gc) % p
        f = _trim(f)
        if f == [0]:
            break
    return _trim(f)


def poly_mulmod(f, g, m, p):
    prod = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                prod[i + j] = (prod[i + j] + a * b) % p
    return poly_mod(prod, m, p)


def poly_powmod(f, e, m, p):
    result = [1]
    base = poly_mod(f, m, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, m, p)
        base = poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree ``1 .. deg f // 2``."""
    f = _trim([c % p for c in f])
    n = len(f) - 1
    if n <= 0:
        return False
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            if poly_mod(f, g, p) == [0]:
                return False
    return True


def is_primitive(f: Sequence[int], p: int) -> bool:
    """``f`` irreducible and ``x`` has multiplicative order ``p^deg - 1`` mod ``f``."""
    if not is_irreducible(f, p):
        return False
    n = len(_trim(list(f))) - 1
    order = p**n - 1
    if poly_powmod([0, 1], order, f, p) != [1]:
        return False
    return all(poly_powmod([0, 1], order // r, f, p) != [1] for r in prime_factors(order))


@lru_cache(maxsize=None)
def least_primitive_polynomial(p: int, a: int) -> tuple[int, ...]:
    for high_first in itertools.product(range(p), repeat=a):
        coeffs = list(reversed(high_first)) + [1]
        if coeffs[0] == 0:
            continue
        if is_primitive(coeffs, p):
            return tuple(coeffs)
    raise AssertionError(f"no primitive polynomial of degree {a} over GF({p})")


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class FieldSpec:
    p: int
    a: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p) or self.a < 1:
            raise ValueError(f"invalid field parameters p={self.p}, a={self.a}")
        if len(self.modulus) != self.a + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree a")
        if not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @property
    def q(self) -> int:
        return self.p**self.a


class Field:
    """Table-driven arithmetic in ``GF(p^a)`` on integer codes."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        p, a = spec.p, spec.a
        q = p**a
        if q > MAX_FIELD_ORDER:
            raise ValueError(f"GF({q}) exceeds the supported field size")
        self.p, self.a, self.q = p, a, q
        self.order = q

        digits = np.array([[(c // p**i) % p for i in range(a)] for c in range(q)], dtype=np.int64)
        weights = p ** np.arange(a, dtype=np.int64)
        self.add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg = ((-digits) % p) @ weights
        self.sub = self.add[:, self.neg]

        # powers of the residue class of x (a primitive element when the modulus is primitive)
        mod = np.array(spec.modulus[:-1], dtype=np.int64)
        if a == 1:
            # GF(p): the class of x is the root -c_0 of x + c_0
            g = (-spec.modulus[0]) % p
            exp = np.array([pow(g, k, p) for k in range(q - 1)], dtype=np.int64)
        else:
            exp = np.zeros(q - 1, dtype=np.int64)
            vec = np.zeros(a, dtype=np.int64)
            vec[0] = 1
            for k in range(q - 1):
                exp[k] = vec @ weights
                top = vec[-1]
                vec = np.concatenate(([0], vec[:-1]))
                vec = (vec - top * mod) % p
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        if np.unique(exp).size != q - 1 or exp[0] != 1:
            raise ValueError(f"modulus {spec.modulus} is not primitive")
        self.exp = exp
        self.log = log

        mul = np.zeros((q, q), dtype=np.int64)
        nz = np.arange(1, q)
        mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        self.mul = mul
        inv = np.zeros(q, dtype=np.int64)
        inv[nz] = exp[(-log[nz]) % (q - 1)]
        self._inv = inv
        self.frob = np.zeros(q, dtype=np.int64)
        self.frob[nz] = exp[(log[nz] * p) % (q - 1)]
        for tbl in (self.add, self.neg, self.sub, self.exp, self.log, self.mul, self._inv, self.frob):
            tbl.flags.writeable = False

    # scalar helpers on codes

    @property
    def primitive(self) -> int:
        return int(self.exp[1 % (self.q - 1)]) if self.q > 2 else 1

    def inv(self, x):
        x = np.asarray(x)
        if np.any(x == 0):
            raise FieldArithmeticError("inverse of zero in a finite field")
        out = self._inv[x]
        return int(out) if out.ndim == 0 else out

    def power(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise FieldArithmeticError("zero to a negative power")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[x]) * e) % (self.q - 1)])

    def frobenius(self, x, times: int = 1):
        for _ in range(times % self.a if self.a else 0):
            x = self.frob[x]
        return x

    def conj(self, x):
        """``x -> x^r`` with ``r^2 = q`` (the involution of a quadratic extension)."""
        if self.a % 2:
            raise ValueError("conjugation needs a field of square order")
        return self.frobenius(x, self.a // 2)

    def element_order(self, x: int) -> int:
        if x == 0:
            raise FieldArithmeticError("zero has no multiplicative order")
        return (self.q - 1) // np.gcd(int(self.log[x]), self.q - 1)

    def subfield(self, r: int) -> list[int]:
        """Codes of the subfield of order ``r``."""
        return [0] + [int(self.exp[k]) for k in range(0, self.q - 1, (self.q - 1) // (r - 1))]

    def element(self, code: int) -> "Fq":
        return Fq(self, code)

    def elements(self) -> list["Fq"]:
        return [Fq(self, c) for c in range(self.q)]

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def GF(q: int) -> Field:
    """The field of order ``q`` with the package's canonical modulus."""
    p, a = prime_power(q)
    return Field(FieldSpec(p, a, least_primitive_polynomial(p, a)))


class Fq:
    """A field element with operator syntax; convenient but slow, for tests
    and small computations."""

    __slots__ = ("F", "code")

    def __init__(self, F: Field, code: int):
        if not 0 <= code < F.q:
            raise ValueError(f"code {code} outside GF({F.q})")
        self.F = F
        self.code = int(code)

    def _other(self, y) -> int:
        if isinstance(y, Fq):
            if y.F is not self.F:
                raise ValueError("elements of different fields")
            return y.code
        if isinstance(y, int):
            return _int_code(self.F, y)
        return NotImplemented

    def __add__(self, y):
        return Fq(self.F, int(self.F.add[self.code, self._other(y)]))

    __radd__ = __add__

    def __sub__(self, y):
        return Fq(self.F, int(self.F.sub[self.code, self._other(y)]))

    def __neg__(self):
        return Fq(self.F, int(self.F.neg[self.code]))

    def __mul__(self, y):
        return Fq(self.F, int(self.F.mul[self.code, self._other(y)]))

    __rmul__ = __mul__

    def inverse(self) -> "Fq":
        return Fq(self.F, self.F.inv(self.code))

    def __truediv__(self, y):
        return self * Fq(self.F, self._other(y)).inverse()

    def __pow__(self, e: int):
        return Fq(self.F, self.F.power(self.code, e))

    def frobenius(self) -> "Fq":
        return Fq(self.F, int(self.F.frob[self.code]))

    def __eq__(self, y):
        if isinstance(y, Fq):
            return self.F is y.F and self.code == y.code
        if isinstance(y, int):
            return self.code == _int_code(self.F, y)
        return NotImplemented

    def __hash__(self):
        return hash((self.F.q, self.code))

    def __repr__(self):
        return f"Fq({self.F.q}:{self.code})"


def _int_code(F: Field, n: int) -> int:
    # the image of the integer n in the prime subfield
    return n % F.p


# ---------------------------------------------------------------------------
# matrices


class MatrixFq:
    """An ``n x n`` matrix over a field, entries stored as codes."""

    __slots__ = ("F", "entries")

    def __init__(self, F: Field, entries):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("matrix must be square")
        if arr.min() < 0 or arr.max() >= F.q:
            raise ValueError("matrix entry outside the field")
        arr.flags.writeable = False
        self.F = F
        self.entries = arr

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, F: Field, n: int) -> "MatrixFq":
        return cls(F, np.eye(n, dtype=np.int64))

    @classmethod
    def diagonal(cls, F: Field, diag: Sequence[int]) -> "MatrixFq":
        m = np.zeros((len(diag), len(diag)), dtype=np.int64)
        m[np.arange(len(diag)), np.arange(len(diag))] = diag
        return cls(F, m)

    @classmethod
    def block_diagonal(cls, F: Field, blocks: Sequence["MatrixFq"]) -> "MatrixFq":
        n = sum(b.n for b in blocks)
        m = np.zeros((n, n), dtype=np.int64)
        k = 0
        for b in blocks:
            m[k:k + b.n, k:k + b.n] = b.entries
            k += b.n
        return cls(F, m)

    def __matmul__(self, other: "MatrixFq") -> "MatrixFq":
        return MatrixFq(self.F, mat_mul(self.F, self.entries, other.entries))

    __mul__ = __matmul__

    def __pow__(self, e: int) -> "MatrixFq":
        if e < 0:
            return self.inverse() ** (-e)
        result = np.eye(self.n, dtype=np.int64)
        base = self.entries
        while e:
            if e & 1:
                result = mat_mul(self.F, result, base)
            base = mat_mul(self.F, base, base)
            e >>= 1
        return MatrixFq(self.F, result)

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixFq) and self.F is other.F and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.F.q, self.entries.tobytes()))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.entries, np.eye(self.n, dtype=np.int64)))

    def is_scalar(self) -> bool:
        e = self.entries
        d = e[0, 0]
        return d != 0 and bool(np.array_equal(e, d * np.eye(self.n, dtype=np.int64)))

    def transpose(self) -> "MatrixFq":
        return MatrixFq(self.F, self.entries.T)

    def conj(self) -> "MatrixFq":
        """Entrywise ``x -> x^r`` where ``r^2 = q``."""
        return MatrixFq(self.F, self.F.conj(self.entries))

    def frobenius(self) -> "MatrixFq":
        return MatrixFq(self.F, self.F.frob[self.entries])

    def scale(self, c: int) -> "MatrixFq":
        return MatrixFq(self.F, self.F.mul[c, self.entries])

    def _reduce(self):
        """Gauss-Jordan on ``[M | I]``; returns (determinant, inverse or None)."""
        F = self.F
        n = self.n
        aug = np.concatenate([self.entries, np.eye(n, dtype=np.int64)], axis=1)
        det = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r, col] != 0), None)
            if piv is None:
                return 0, None
            if piv != col:
                aug[[col, piv]] = aug[[piv, col]]
                det = int(F.neg[det])
            lead = int(aug[col, col])
            det = int(F.mul[det, lead])
            aug[col] = F.mul[F.inv(lead), aug[col]]
            for r in range(n):
                if r != col and aug[r, col] != 0:
                    aug[r] = F.sub[aug[r], F.mul[aug[r, col], aug[col]]]
        return det, aug[:, n:]

    def det(self) -> int:
        return self._reduce()[0]

    def inverse(self) -> "MatrixFq":
        det, inv = self._reduce()
        if inv is None:
            raise FieldArithmeticError("singular matrix has no inverse")
        return MatrixFq(self.F, inv)

    def order(self, bound: int | None = None) -> int:
        """Multiplicative order (by repeated multiplication, up to ``bound``)."""
        bound = bound or self.F.q ** (self.n * self.n)
        m = self
        for k in range(1, bound + 1):
            if m.is_identity():
                return k
            m = m @ self
        raise ValueError("matrix order exceeds the bound (singular matrix?)")

    def order_dividing(self, n: int) -> int:
        """Order, given that it divides ``n``."""
        if not (self ** n).is_identity():
            raise ValueError(f"matrix order does not divide {n}")
        o = n
        for r in prime_factors(n):
            while o % r == 0 and (self ** (o // r)).is_identity():
                o //= r
        return o

    def __repr__(self):
        return f"MatrixFq(GF({self.F.q}), {self.entries.tolist()})"


def mat_mul(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``A B`` for code arrays; ``A`` may be a stack of row vectors."""
    out = F.mul[A[..., 0, None], B[0]]
    for k in range(1, B.shape[0]):
        out = F.add[out, F.mul[A[..., k, None], B[k]]]
    return out


def companion_matrix(F: Field, poly: Sequence[int]) -> MatrixFq:
    """Companion matrix of the monic ``poly`` (codes, lowest degree first).

    Row ``i`` maps ``e_i`` to ``e_{i+1}``; the last row is ``-(c_0, ..., c_{n-1})``,
    so the matrix is multiplication by a root on the basis of its powers.
    """
    poly = list(poly)
    if poly[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    n = len(poly) - 1
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        m[i, i + 1] = 1
    m[n - 1] = F.neg[np.array(poly[:-1], dtype=np.int64)]
    return MatrixFq(F, m)


@lru_cache(maxsize=None)
def primitive_polynomial(q: int, n: int) -> tuple[int, ...]:
    """Least monic degree-``n`` polynomial over ``GF(q)`` whose companion matrix
    has order ``q^n - 1``; polynomials are ordered by the code tuple
    ``(c_{n-1}, ..., c_0)``."""
    F = GF(q)
    target = q**n - 1
    for high_first in itertools.product(range(q), repeat=n):
        coeffs = list(reversed(high_first)) + [1]
        if coeffs[0] == 0:
            continue
        C = companion_matrix(F, coeffs)
        if not (C ** target).is_identity():
            continue
        if all(not (C ** (target // r)).is_identity() for r in prime_factors(target)):
            return tuple(coeffs)
    raise AssertionError(f"no primitive polynomial of degree {n} over GF({q})")


# ---------------------------------------------------------------------------
# geometries


@dataclass(frozen=True)
class PointGeometry:
    """Canonical 1-space representatives (first nonzero coordinate 1), sorted
    lexicographically by coordinate codes."""

    kind: str
    n: int
    F: Field
    points: np.ndarray
    lookup: np.ndarray = dc_field(repr=False)
    form_q: int | None = None

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def __len__(self) -> int:
        return self.size

    def index(self, vec: Sequence[int]) -> int:
        idx = self.indices(np.asarray([vec], dtype=np.int64))[0]
        if idx < 0:
            raise GeometryError(f"vector {list(vec)} is not a point of the geometry")
        return int(idx)

    def indices(self, vecs: np.ndarray) -> np.ndarray:
        """Point indices of the 1-spaces spanned by the rows (-1 if absent)."""
        canon = normalize_rows(self.F, vecs)
        codes = canon @ (self.F.q ** np.arange(self.n - 1, -1, -1, dtype=np.int64))
        return self.lookup[codes]


def normalize_rows(F: Field, vecs: np.ndarray) -> np.ndarray:
    nonzero = vecs != 0
    if not nonzero.any(axis=1).all():
        raise GeometryError("the zero vector spans no point")
    first = nonzero.argmax(axis=1)
    lead = vecs[np.arange(vecs.shape[0]), first]
    return F.mul[F.inv(lead)[:, None], vecs]


def _all_canonical(F: Field, n: int) -> np.ndarray:
    rows = []
    for lead in range(n):
        # (0, ..., 0, 1, *, ..., *)
        k = n - lead - 1
        tails = np.array(list(itertools.product(range(F.q), repeat=k)), dtype=np.int64).reshape(F.q**k, k)
        block = np.zeros((tails.shape[0], n), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tails
        rows.append(block)
    pts = np.concatenate(rows, axis=0)
    order = np.lexsort(pts.T[::-1])
    return pts[order]


def _make_geometry(kind, n, F, pts, form_q=None) -> PointGeometry:
    codes = pts @ (F.q ** np.arange(n - 1, -1, -1, dtype=np.int64))
    lookup = np.full(F.q**n, -1, dtype=np.int64)
    lookup[codes] = np.arange(pts.shape[0])
    pts.flags.writeable = False
    lookup.flags.writeable = False
    return PointGeometry(kind, n, F, pts, lookup, form_q)


@lru_cache(maxsize=None)
def projective_points(n: int, q: int) -> PointGeometry:
    if n < 2:
        raise ValueError("projective geometry needs n >= 2")
    F = GF(q)
    return _make_geometry("projective", n, F, _all_canonical(F, n))


def hermitian_form(F: Field, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """``sum_i u_i * conj(v_{n-1-i})`` on rows of ``u`` and ``v``."""
    n = u.shape[-1]
    vb = F.conj(v[..., ::-1])
    out = F.mul[u[..., 0], vb[..., 0]]
    for i in range(1, n):
        out = F.add[out, F.mul[u[..., i], vb[..., i]]]
    return out


@lru_cache(maxsize=None)
def hermitian_isotropic_points(n: int, q: int) -> PointGeometry:
    """Isotropic 1-spaces of the anti-diagonal Hermitian form over ``GF(q^2)``."""
    if n not in (3, 4):
        raise ValueError("only n = 3 and n = 4 are supported")
    F = GF(q * q)
    pts = _all_canonical(F, n)
    iso = hermitian_form(F, pts, pts) == 0
    return _make_geometry("hermitian", n, F, pts[iso].copy(), form_q=q)


def hermitian_gram(F: Field, n: int) -> MatrixFq:
    return MatrixFq(F, np.eye(n, dtype=np.int64)[::-1])


def is_unitary(M: MatrixFq) -> bool:
    """``M J conj(M)^T == J`` for the anti-diagonal ``J``."""
    J = hermitian_gram(M.F, M.n)
    return (M @ J @ M.conj().transpose()) == J


def matrix_perm(M: MatrixFq, geom: PointGeometry) -> Permutation:
    if M.F is not geom.F or M.n != geom.n:
        raise GeometryError("matrix and geometry disagree on field or dimension")
    imgs = mat_mul(geom.F, geom.points, M.entries)
    idx = geom.indices(imgs)
    if np.any(idx < 0):
        bad = int(np.flatnonzero(idx < 0)[0])
        raise GeometryError(f"matrix maps point {bad} off the geometry")
    return Permutation(idx)


def matrix_to_perm(gens: Iterable[MatrixFq], geom: PointGeometry, **kw) -> PermGroup:
    """The permutation group induced on the points; the kernel is the scalars."""
    perms = [matrix_perm(M, geom) for M in gens]
    return PermGroup(perms, geom.size, **kw)

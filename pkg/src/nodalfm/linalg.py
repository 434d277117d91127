"""Exact dense linear algebra over the rationals and over prime fields.

Everything here is exact: rational arithmetic never rounds, prime-field
arithmetic is arithmetic mod p.  Large rational kernel computations are
accelerated by projecting mod word-sized primes (numpy), lifting the result
back to Q by rational reconstruction and then *verifying* it exactly, so the
speedup never weakens the exactness contract.  A pure fraction-free path is
kept as a fallback and is used for small systems.

The intertwiner machinery (solution spaces of S*X = X2*S, S*Y = Y2*S) is the
workhorse for module isomorphism testing further up the stack.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

try:  # gmpy2.mpq is a drop-in, much faster rational type
    from gmpy2 import mpq as _RAT

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - environment dependent
    _RAT = Fraction
    _HAVE_GMPY2 = False


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------


class RationalField:
    """The field Q.  Elements are arbitrary-precision rationals."""

    tag = "Q"

    def __init__(self):
        self.zero = _RAT(0)
        self.one = _RAT(1)

    def coerce(self, x):
        if isinstance(x, str):
            return _RAT(*_parse_fraction_str(x))
        if isinstance(x, Fraction):
            return _RAT(x.numerator, x.denominator)
        return _RAT(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def inv(self, a):
        return self.div(self.one, a)

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def to_str(self, a) -> str:
        return str(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


def _parse_fraction_str(s: str) -> Tuple[int, int]:
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return int(num), int(den)
    return int(s), 1


class PrimeField:
    """The field F_p for an odd prime p.  Elements are ints in [0, p)."""

    def __init__(self, p: int):
        if p < 3 or not _is_prime(p):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        self.p = p
        self.zero = 0
        self.one = 1

    @property
    def tag(self) -> str:
        return f"Fp:{self.p}"

    def coerce(self, x):
        if isinstance(x, str):
            num, den = _parse_fraction_str(x)
            return self.div(num % self.p, den % self.p)
        if isinstance(x, Fraction) or (
            _HAVE_GMPY2 and not isinstance(x, int) and hasattr(x, "denominator")
        ):
            return self.div(int(x.numerator) % self.p, int(x.denominator) % self.p)
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return (a * pow(b, self.p - 2, self.p)) % self.p

    def inv(self, a):
        return self.div(1, a)

    def neg(self, a):
        return (-a) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def to_str(self, a) -> str:
        return str(a % self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = RationalField()


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin, valid far beyond word size
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below_2_30(count: int) -> List[int]:
    primes, n = [], 2**30 - 1
    while len(primes) < count:
        if _is_prime(n):
            primes.append(n)
        n -= 2
    return primes


# word-sized primes: products stay inside int64 during elimination
_PRIMES = _primes_below_2_30(12)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class Matrix:
    """Dense matrix over a fixed field, stored as a list of row lists.

    Matrices are treated as immutable; operations return fresh objects.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, data: Sequence[Sequence], copy: bool = True):
        self.field = field
        if copy:
            self.data = [[field.coerce(x) for x in row] for row in data]
        else:
            self.data = [list(row) for row in data] if not isinstance(data, list) else data
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged rows in matrix data")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)], copy=False)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @classmethod
    def from_cols(cls, field, cols: Sequence[Sequence]) -> "Matrix":
        if not cols:
            return cls.zeros(field, 0, 0)
        rows = len(cols[0])
        return cls(field, [[cols[j][i] for j in range(len(cols))] for i in range(rows)])

    @classmethod
    def column(cls, field, vec: Sequence) -> "Matrix":
        return cls(field, [[x] for x in vec])

    # -- basic structure ---------------------------------------------------

    def entry(self, i: int, j: int):
        return self.data[i][j]

    def row(self, i: int) -> List:
        return list(self.data[i])

    def col(self, j: int) -> List:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> List[List]:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            copy=False,
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(x) for row in self.data for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field or self.rows != other.rows or self.cols != other.cols:
            return False
        return all(
            self.data[i][j] == other.data[i][j]
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(str(x) for row in self.data for x in row)))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.to_str(x) for x in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        f = self.field
        return Matrix(
            f,
            [
                [f.add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
            copy=False,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        f = self.field
        return Matrix(
            f,
            [
                [f.sub(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
            copy=False,
        )

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.neg(x) for x in row] for row in self.data], copy=False)

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.coerce(c)
        return Matrix(f, [[f.mul(c, x) for x in row] for row in self.data], copy=False)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        f = self.field
        zero = f.zero
        ot = other.transpose().data
        out = []
        for lrow in self.data:
            orow = []
            for rcol in ot:
                acc = zero
                for a, b in zip(lrow, rcol):
                    if a != zero and b != zero:
                        acc = f.add(acc, f.mul(a, b))
                orow.append(acc)
            out.append(orow)
        return Matrix(f, out, copy=False)

    def apply(self, vec: Sequence) -> List:
        f = self.field
        zero = f.zero
        out = []
        for row in self.data:
            acc = zero
            for a, b in zip(row, vec):
                if a != zero and b != zero:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return out

    def power(self, k: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def trace(self):
        f = self.field
        acc = f.zero
        for i in range(min(self.rows, self.cols)):
            acc = f.add(acc, self.data[i][i])
        return acc

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("hstack row mismatch")
        return Matrix(
            self.field,
            [self.data[i] + other.data[i] for i in range(self.rows)],
            copy=False,
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("vstack col mismatch")
        return Matrix(self.field, [list(r) for r in self.data + other.data], copy=False)

    def take_rows(self, idx: Iterable[int]) -> "Matrix":
        rows = [list(self.data[i]) for i in idx]
        if not rows:
            return Matrix.zeros(self.field, 0, self.cols)
        return Matrix(self.field, rows, copy=False)

    def take_cols(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        return Matrix(
            self.field,
            [[row[j] for j in idx] for row in self.data],
            copy=False,
        )

    def block_diag(self, other: "Matrix") -> "Matrix":
        f = self.field
        out = Matrix.zeros(f, self.rows + other.rows, self.cols + other.cols)
        for i in range(self.rows):
            out.data[i][: self.cols] = list(self.data[i])
        for i in range(other.rows):
            out.data[self.rows + i][self.cols :] = list(other.data[i])
        return out

    def _check_shape(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")


# ---------------------------------------------------------------------------
# echelon forms, rank, kernel
# ---------------------------------------------------------------------------


def _rref_in_place(data: List[List], field) -> List[int]:
    """Reduced row echelon form; returns the pivot column list."""
    rows = len(data)
    cols = len(data[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if not field.is_zero(data[i][c]):
                pr = i
                break
        if pr is None:
            continue
        data[r], data[pr] = data[pr], data[r]
        inv = field.inv(data[r][c])
        data[r] = [field.mul(inv, x) for x in data[r]]
        prow = data[r]
        for i in range(rows):
            if i != r and not field.is_zero(data[i][c]):
                fac = data[i][c]
                data[i] = [field.sub(a, field.mul(fac, b)) for a, b in zip(data[i], prow)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    data = [list(row) for row in m.data]
    pivots = _rref_in_place(data, m.field)
    return Matrix(m.field, data, copy=False), pivots


def rank(m: Matrix) -> int:
    """Rank over the matrix's field, by exact elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    data = [list(row) for row in m.data]
    return len(_rref_in_place(data, m.field))


def _kernel_from_rref(data: List[List], pivots: List[int], cols: int, field) -> List[List]:
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    basis = []
    for fc in free:
        v = [field.zero] * cols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(data[r][fc])
        basis.append(v)
    return basis


def kernel_basis(m: Matrix) -> Matrix:
    """A matrix whose columns form a basis of ker(m).

    The basis has the identity on the free coordinates of the reduced
    echelon form, so its columns are independent by construction.
    """
    if m.cols == 0:
        return Matrix.zeros(m.field, 0, 0)
    if m.rows == 0:
        return Matrix.identity(m.field, m.cols)
    if isinstance(m.field, RationalField) and m.cols > 96:
        res = _kernel_modular_qq(m)
        if res is not None:
            return res
    data = [list(row) for row in m.data]
    pivots = _rref_in_place(data, m.field)
    basis = _kernel_from_rref(data, pivots, m.cols, m.field)
    return Matrix.from_cols(m.field, basis) if basis else Matrix.zeros(m.field, m.cols, 0)


def solve_right(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some X with a*X = b, or None when inconsistent."""
    if a.rows != b.rows:
        raise ValueError("shape mismatch in solve_right")
    f = a.field
    aug = a.hstack(b)
    red, pivots = rref(aug)
    if any(p >= a.cols for p in pivots):
        return None
    x = Matrix.zeros(f, a.cols, b.cols)
    for r, p in enumerate(pivots):
        for j in range(b.cols):
            x.data[p][j] = red.data[r][a.cols + j]
    return x

def is_invertible(m: Matrix) -> bool:
    if not m.is_square():
        return False
    if m.rows == 0:
        return True
    if isinstance(m.field, RationalField):
        # a nonzero determinant mod p certifies invertibility over Q
        arr = _modp_array(m, _PRIMES[0])
        if arr is not None and _modp_rank(arr, _PRIMES[0]) == m.rows:
            return True
    return rank(m) == m.rows


def invert(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    x = solve_right(m, Matrix.identity(m.field, m.rows))
    if x is None or not (m * x == Matrix.identity(m.field, m.rows)):
        raise ValueError("matrix is not invertible")
    return x


# ---------------------------------------------------------------------------
# modular acceleration (certified: lifted results are verified exactly)
# ---------------------------------------------------------------------------


def _modp_array(m: Matrix, p: int) -> Optional[np.ndarray]:
    """Project a rational matrix mod p; None when a denominator hits p."""
    out = np.zeros((m.rows, m.cols), dtype=np.int64)
    for i, row in enumerate(m.data):
        for j, x in enumerate(row):
            if x == 0:
                continue
            num = int(x.numerator)
            den = int(x.denominator)
            if den % p == 0:
                return None
            out[i, j] = (num % p) * pow(den % p, p - 2, p) % p
    return out


def _modp_rref(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    a = np.mod(a, p)
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        nzrows = np.nonzero(col)[0]
        if nzrows.size:
            a[nzrows] = (a[nzrows] - np.outer(col[nzrows], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def _modp_rank(a: np.ndarray, p: int) -> int:
    return len(_modp_rref(a.copy(), p)[1])


def _modp_kernel(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Kernel basis mod p, identity on free coordinates; returns (basis, pivots)."""
    red, pivots = _modp_rref(a.copy(), p)
    cols = a.shape[1]
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for r, pc in enumerate(pivots):
            basis[pc, k] = (-int(red[r, fc])) % p
    return basis, pivots


def _rat_reconstruct(r: int, m: int):
    """Lift r mod m to a rational n/d with |n|, d <= sqrt(m/2), or None."""
    r %= m
    bound = isqrt(m // 2)
    a0, a1 = m, r
    t0, t1 = 0, 1
    while a1 > bound:
        q = a0 // a1
        a0, a1 = a1, a0 - q * a1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    num, den = a1, t1
    if den < 0:
        num, den = -num, -den
    if gcd(num, den) != 1:
        return None
    if (num - r * den) % m != 0:
        return None
    return num, den


def _reconstruct_vector(residues: List[int], modulus: int):
    out = []
    for r in residues:
        rec = _rat_reconstruct(r, modulus)
        if rec is None:
            return None
        out.append(_RAT(rec[0], rec[1]))
    return out


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> Tuple[int, int]:
    inv = pow(m1 % m2, m2 - 2, m2) if _is_prime(m2) else pow(m1, -1, m2)
    t = ((r2 - r1) * inv) % m2
    return r1 + m1 * t, m1 * m2

def _kernel_modular_qq(m: Matrix) -> Optional[Matrix]:
    """Certified rational kernel via mod-p projection and reconstruction.

    The lifted basis is verified exactly against m; the dimension is
    certified because the basis carries an identity block on the free
    coordinates (independence) and has cols - rank_p(m) members, while
    rank_p is a lower bound for the rank over Q.
    """
    residue_cols: Optional[List[List[int]]] = None
    modulus = 1
    expected_free: Optional[List[int]] = None
    for p in _PRIMES:
        arr = _modp_array(m, p)
        if arr is None:
            continue
        basis_p, pivots = _modp_kernel(arr, p)
        free = [c for c in range(m.cols) if c not in set(pivots)]
        if expected_free is None:
            expected_free = free
            residue_cols = [list(map(int, basis_p[:, k])) for k in range(basis_p.shape[1])]
            modulus = p
        elif free != expected_free:
            # bad prime somewhere; restart from the larger rank structure
            if len(free) < len(expected_free):
                expected_free = free
                residue_cols = [list(map(int, basis_p[:, k])) for k in range(basis_p.shape[1])]
                modulus = p
            continue
        else:
            new_cols = []
            for k, col in enumerate(residue_cols):
                merged = [
                    _crt_pair(col[i], modulus, int(basis_p[i, k]), p)[0]
                    for i in range(len(col))
                ]
                new_cols.append(merged)
            residue_cols = new_cols
            modulus *= p
        lifted = []
        ok = True
        for col in residue_cols:
            vec = _reconstruct_vector(col, modulus)
            if vec is None:
                ok = False
                break
            lifted.append(vec)
        if not ok:
            continue
        if not lifted:
            return Matrix.zeros(m.field, m.cols, 0)
        cand = Matrix.from_cols(m.field, lifted)
        if _verify_kernel(m, cand):
            return cand
    return None


def _verify_kernel(m: Matrix, k: Matrix) -> bool:
    f = m.field
    zero = f.zero
    sparse_rows = [
        [(j, x) for j, x in enumerate(row) if x != zero] for row in m.data
    ]
    for c in range(k.cols):
        vec = [k.data[i][c] for i in range(k.rows)]
        for entries in sparse_rows:
            acc = zero
            for j, x in entries:
                v = vec[j]
                if v != zero:
                    acc = f.add(acc, f.mul(x, v))
            if acc != zero:
                return False
    return True


# ---------------------------------------------------------------------------
# intertwiner spaces
# ---------------------------------------------------------------------------


def intertwiner_space(x: Matrix, y: Matrix, x2: Matrix, y2: Matrix) -> List[Matrix]:
    """Basis of {S : S*x = x2*S and S*y = y2*S}, as (n2 x n) matrices.

    This is the space of module homomorphisms (V, x, y) -> (V2, x2, y2).
    """
    if not (x.is_square() and y.is_square() and x2.is_square() and y2.is_square()):
        raise ValueError("intertwiner_space expects square matrices")
    if x.rows != y.rows or x2.rows != y2.rows:
        raise ValueError("operator size mismatch")
    f = x.field
    n, n2 = x.rows, x2.rows
    if n == 0 or n2 == 0:
        return []
    if isinstance(f, RationalField):
        basis = _intertwiner_modular(x, y, x2, y2)
        if basis is not None:
            return basis
    big = _sylvester_matrix(x, y, x2, y2)
    ker = kernel_basis(big)
    return [_unvec(ker.col(j), n2, n, f) for j in range(ker.cols)]


def _sylvester_matrix(x: Matrix, y: Matrix, x2: Matrix, y2: Matrix) -> Matrix:
    # row-major vec: vec(S*A) = (I (x) A^T) vec(S); vec(B*S) = (B (x) I) vec(S)
    f = x.field
    n, n2 = x.rows, x2.rows
    nvars = n2 * n
    rows = []
    for a, b in ((x, x2), (y, y2)):
        at = a.transpose()
        for i in range(n2):
            for j in range(n):
                row = [f.zero] * nvars
                for k in range(n):
                    row[i * n + k] = f.add(row[i * n + k], at.data[k][j])
                for k in range(n2):
                    v = b.data[i][k]
                    if v != f.zero:
                        row[k * n + j] = f.sub(row[k * n + j], v)
                rows.append(row)
    return Matrix(f, rows, copy=False)


def _unvec(vec: Sequence, rows: int, cols: int, field) -> Matrix:
    return Matrix(
        field,
        [[vec[i * cols + j] for j in range(cols)] for i in range(rows)],
        copy=False,
    )


def _intertwiner_modular(x, y, x2, y2) -> Optional[List[Matrix]]:
    n, n2 = x.rows, x2.rows
    nvars = n2 * n
    residue_cols = None
    modulus = 1
    expected_free = None
    for p in _PRIMES:
        ax, ay, ax2, ay2 = (_modp_array(m, p) for m in (x, y, x2, y2))
        if ax is None or ay is None or ax2 is None or ay2 is None:
            continue
        eye_n2 = np.eye(n2, dtype=np.int64)
        eye_n = np.eye(n, dtype=np.int64)
        block1 = (np.kron(eye_n2, ax.T) - np.kron(ax2, eye_n)) % p
        block2 = (np.kron(eye_n2, ay.T) - np.kron(ay2, eye_n)) % p
        big = np.vstack([block1, block2])
        basis_p, pivots = _modp_kernel(big, p)
        free = [c for c in range(nvars) if c not in set(pivots)]
        if expected_free is None or len(free) < len(expected_free):
            expected_free = free
            residue_cols = [list(map(int, basis_p[:, k])) for k in range(basis_p.shape[1])]
            modulus = p
        elif free != expected_free:
            continue
        else:
            residue_cols = [
                [
                    _crt_pair(col[i], modulus, int(basis_p[i, k]), p)[0]
                    for i in range(len(col))
                ]
                for k, col in enumerate(residue_cols)
            ]
            modulus *= p
        mats = []
        ok = True
        for col in residue_cols:
            vec = _reconstruct_vector(col, modulus)
            if vec is None:
                ok = False
                break
            mats.append(_unvec(vec, n2, n, x.field))
        if not ok:
            continue
        if all(_verify_intertwiner(s, x, y, x2, y2) for s in mats):
            return mats
    return None


def _verify_intertwiner(s: Matrix, x, y, x2, y2) -> bool:
    return (s * x == x2 * s) and (s * y == y2 * s)


def random_invertible_element(
    basis: Sequence[Matrix],
    seed: int = 0,
    retries: int = 8,
    bound: int = 10,
) -> Optional[Matrix]:
    """An invertible combination of the basis with coefficients from
    {-bound, ..., bound} \\ {0}, retrying up to `retries` times; None if
    every attempt fails.
    """
    if not basis:
        return None
    f = basis[0].field
    n = basis[0].rows
    if any(b.rows != n or b.cols != n for b in basis):
        raise ValueError("basis matrices must be square of equal size")
    rng = random.Random(seed)
    nonzero = [c for c in range(-bound, bound + 1) if c != 0]
    for _ in range(max(1, retries)):
        coeffs = [rng.choice(nonzero) for _ in basis]
        cand = Matrix.zeros(f, n, n)
        for c, b in zip(coeffs, basis):
            cand = cand + b.scale(c)
        if is_invertible(cand):
            return cand
    return None


# ---------------------------------------------------------------------------
# subspace calculus  (subspaces are matrices whose columns span them)
# ---------------------------------------------------------------------------


def column_space(m: Matrix) -> Matrix:
    """Canonical (RREF-of-transpose) basis of the column space."""
    if m.cols == 0:
        return Matrix.zeros(m.field, m.rows, 0)
    data = [m.col(j) for j in range(m.cols)]
    pivots = _rref_in_place(data, m.field)
    keep = data[: len(pivots)]
    if not keep:
        return Matrix.zeros(m.field, m.rows, 0)
    return Matrix.from_cols(m.field, keep)


def space_dim(m: Matrix) -> int:
    return rank(m)


def space_sum(a: Matrix, b: Matrix) -> Matrix:
    return column_space(a.hstack(b))


def space_intersect(a: Matrix, b: Matrix) -> Matrix:
    """Basis of col(a) cap col(b)."""
    if a.cols == 0 or b.cols == 0:
        return Matrix.zeros(a.field, a.rows, 0)
    ker = kernel_basis(a.hstack(-b))
    if ker.cols == 0:
        return Matrix.zeros(a.field, a.rows, 0)
    coeffs = ker.take_rows(range(a.cols))
    return column_space(a * coeffs)


def preimage_space(amap: Matrix, u: Matrix) -> Matrix:
    """Basis of {v : amap*v in col(u)} (includes ker(amap))."""
    if u.cols == 0:
        return kernel_basis(amap)
    ker = kernel_basis(amap.hstack(-u))
    if ker.cols == 0:
        return Matrix.zeros(amap.field, amap.cols, 0)
    return column_space(ker.take_rows(range(amap.cols)))


def space_contains(u: Matrix, vec: Sequence) -> bool:
    v = Matrix.column(u.field, vec)
    return solve_right(u, v) is not None if u.cols else all(
        u.field.is_zero(x) for x in vec
    )


def restrict_operator(op: Matrix, u: Matrix) -> Matrix:
    """Matrix of op on the invariant subspace col(u), in the basis u."""
    img = op * u
    sol = solve_right(u, img)
    if sol is None:
        raise ValueError("subspace is not invariant under the operator")
    return sol


def full_space(field, n: int) -> Matrix:
    return Matrix.identity(field, n)


# ---------------------------------------------------------------------------
# polynomials of matrices
# ---------------------------------------------------------------------------


def minimal_polynomial(m: Matrix) -> List:
    """Monic minimal polynomial of m, as coefficients low -> high."""
    if not m.is_square():
        raise ValueError("minimal polynomial of a non-square matrix")
    f = m.field
    n = m.rows
    if n == 0:
        return [f.one]
    powers = [Matrix.identity(f, n)]
    vecs = [[powers[0].data[i][j] for i in range(n) for j in range(n)]]
    while True:
        nxt = powers[-1] * m
        vec = [nxt.data[i][j] for i in range(n) for j in range(n)]
        stacked = Matrix.from_cols(f, vecs)
        sol = solve_right(stacked, Matrix.column(f, vec))
        if sol is not None:
            d = len(vecs)
            coeffs = [f.neg(sol.data[k][0]) for k in range(d)] + [f.one]
            return coeffs
        powers.append(nxt)
        vecs.append(vec)


def poly_eval_matrix(coeffs: Sequence, m: Matrix) -> Matrix:
    f = m.field
    out = Matrix.zeros(f, m.rows, m.cols)
    for c in reversed(list(coeffs)):
        out = out * m
        for i in range(m.rows):
            out.data[i][i] = f.add(out.data[i][i], f.coerce(c))
    return out


def poly_eval_scalar(coeffs: Sequence, x, field):
    acc = field.zero
    for c in reversed(list(coeffs)):
        acc = field.add(field.mul(acc, x), field.coerce(c))
    return acc


def rational_roots(coeffs: Sequence, field=QQ) -> List:
    """Exact rational roots of a Q-coefficient polynomial.

    Roots are located numerically, snapped to nearby rationals by continued
    fractions and then verified exactly, so the returned list is always
    correct; rationals of extreme height may be missed (callers treat this
    as 'no split found').
    """
    cs = [field.coerce(c) for c in coeffs]
    while cs and cs[-1] == field.zero:
        cs.pop()
    if len(cs) <= 1:
        return []
    roots: List = []
    if cs[0] == field.zero:
        roots.append(field.zero)
    floats = np.array([float(Fraction(int(c.numerator), int(c.denominator))) for c in cs])
    try:
        approx = np.roots(floats[::-1])
    except Exception:
        approx = []
    seen = set(str(r) for r in roots)
    for z in approx:
        if abs(z.imag) > 1e-7:
            continue
        xr = float(z.real)
        for cand in _rational_candidates(xr):
            if str(cand) in seen:
                continue
            if poly_eval_scalar(cs, cand, field) == field.zero:
                roots.append(cand)
                seen.add(str(cand))
                break
    return roots


def _rational_candidates(x: float, max_den: int = 10**7):
    cands = []
    fr = Fraction(x).limit_denominator(max_den)
    cands.append(_RAT(fr.numerator, fr.denominator))
    for d in (1, 2, 3, 4, 6, 12):
        cands.append(_RAT(round(x * d), d))
    out, seen = [], set()
    for c in cands:
        if str(c) not in seen:
            seen.add(str(c))
            out.append(c)
    return out


# ---------------------------------------------------------------------------
# linear relations (subspaces of V + V); used for band monodromy
# ---------------------------------------------------------------------------


def relation_compose(r1: Matrix, r2: Matrix, n: int) -> Matrix:
    """Compose relations r1, r2 <= V + V: pairs (u, w) with some v such that
    (u, v) in r1 and (v, w) in r2.  Relations are given by spanning columns
    of height 2n."""
    f = r1.field
    if r1.cols == 0 or r2.cols == 0:
        return Matrix.zeros(f, 2 * n, 0)
    q1 = r1.take_rows(range(n, 2 * n))
    p2 = r2.take_rows(range(n))
    ker = kernel_basis(q1.hstack(-p2))
    if ker.cols == 0:
        return Matrix.zeros(f, 2 * n, 0)
    a = ker.take_rows(range(r1.cols))
    b = ker.take_rows(range(r1.cols, r1.cols + r2.cols))
    top = r1.take_rows(range(n)) * a
    bot = r2.take_rows(range(n, 2 * n)) * b
    return column_space(top.vstack(bot))


def relation_graph(a: Matrix, b: Matrix) -> Matrix:
    """The relation {(u, w) : a*u = b*w} <= V + V."""
    f = a.field
    n = a.rows
    ker = kernel_basis(a.hstack(-b))
    if ker.cols == 0:
        return Matrix.zeros(f, 2 * n, 0)
    return ker

"""Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction`.  On top of them sit

* :class:`QuadElem`, an element ``a + b*sqrt(-3)`` of Q(sqrt(-3)) = Q(omega),
* :class:`TowerElem`, an element of Q(omega)[a]/(a^5 - 27),
* :class:`TruncSeries`, a truncated power series over any of these,
* integer matrices with Smith normal form, and rank/solve over any field.

All values are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction


class ArithError(ArithmeticError):
    """Raised for division by zero and malformed field data."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


# ---------------------------------------------------------------------------
# Q(sqrt(-3))


class QuadElem:
    """``a + b*sqrt(-3)`` with rational a, b.

    The omega view is ``c + d*omega`` with omega = (-1 + sqrt(-3))/2,
    so a = c - d/2 and b = d/2.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuadElem is immutable")

    @classmethod
    def coerce(cls, x) -> "QuadElem":
        if isinstance(x, QuadElem):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to QuadElem")

    @classmethod
    def from_omega(cls, c, d) -> "QuadElem":
        c, d = _frac(c), _frac(d)
        return cls(c - d / 2, d / 2)

    def omega_view(self) -> tuple[Fraction, Fraction]:
        return self.a + self.b, 2 * self.b

    # ring structure
    def __add__(self, other):
        try:
            o = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadElem(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b)

    def __sub__(self, other):
        try:
            o = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadElem(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadElem(self.a * o.a - 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        return QuadElem(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + 3 * self.b * self.b

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ArithError("division by zero in Q(sqrt(-3))")
        return QuadElem(self.a / n, -self.b / n)

    def __truediv__(self, other):
        try:
            o = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuadElem.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        return _power(self, n, QuadElem(1))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        try:
            o = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __complex__(self):
        return complex(float(self.a), float(self.b) * 3 ** 0.5)

    def __repr__(self):
        return f"QuadElem({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt(-3)"
        return f"{self.a} + {self.b}*sqrt(-3)"


OMEGA = QuadElem.from_omega(0, 1)
OMEGA2 = OMEGA * OMEGA
SQRT_M3 = QuadElem(0, 1)


def _power(x, n: int, one):
    if n < 0:
        x = x.inverse()
        n = -n
    result = one
    base = x
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


# ---------------------------------------------------------------------------
# Q(omega)[a]/(a^5 - 27)

TOWER_DEG = 5
TOWER_CONST = 27


class TowerElem:
    """c0 + c1 a + ... + c4 a^4 over Q(omega), reduced with a^5 = 27.

    27 is not a fifth power in Q(omega), so this is a field of degree 10,
    isomorphic to Q(omega, a_k) for each complex fifth root a_k of 27.
    An identity proved here therefore holds for all five choices of a.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [QuadElem.coerce(c) for c in coeffs]
        if len(cs) > TOWER_DEG:
            cs = _reduce_tower(cs)
        cs += [QuadElem(0)] * (TOWER_DEG - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TowerElem is immutable")

    @classmethod
    def coerce(cls, x) -> "TowerElem":
        if isinstance(x, TowerElem):
            return x
        return cls([QuadElem.coerce(x)])

    @classmethod
    def gen(cls) -> "TowerElem":
        return cls([0, 1])

    def __add__(self, other):
        try:
            o = TowerElem.coerce(other)
        except TypeError:
            return NotImplemented
        return TowerElem(x + y for x, y in zip(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return TowerElem(-c for c in self.coeffs)

    def __sub__(self, other):
        try:
            o = TowerElem.coerce(other)
        except TypeError:
            return NotImplemented
        return TowerElem(x - y for x, y in zip(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = TowerElem.coerce(other)
        except TypeError:
            return NotImplemented
        prod = [QuadElem(0)] * (2 * TOWER_DEG - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(o.coeffs):
                if not y.is_zero():
                    prod[i + j] = prod[i + j] + x * y
        return TowerElem(_reduce_tower(prod))

    __rmul__ = __mul__

    def _mult_matrix(self) -> list[list[QuadElem]]:
        # column j holds the coefficients of self * a^j
        cols = []
        col = self
        a = TowerElem.gen()
        for _ in range(TOWER_DEG):
            cols.append(col.coeffs)
            col = col * a
        return [[cols[j][i] for j in range(TOWER_DEG)] for i in range(TOWER_DEG)]

    def inverse(self) -> "TowerElem":
        if self.is_zero():
            raise ArithError("division by zero in tower field")
        nz = [i for i, c in enumerate(self.coeffs) if not c.is_zero()]
        if len(nz) == 1:
            # monomial c a^k, inverse is c^-1 a^(5-k) / 27
            k = nz[0]
            c = self.coeffs[k].inverse()
            if k == 0:
                return TowerElem([c])
            cs = [QuadElem(0)] * TOWER_DEG
            cs[TOWER_DEG - k] = c / TOWER_CONST
            return TowerElem(cs)
        sol = solve(self._mult_matrix(), [QuadElem(1)] + [QuadElem(0)] * (TOWER_DEG - 1))
        return TowerElem(sol)

    def __truediv__(self, other):
        try:
            o = TowerElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return TowerElem.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        return _power(self, n, TowerElem([1]))

    def conj(self) -> "TowerElem":
        """omega -> omega^2, a fixed."""
        return TowerElem(c.conj() for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def base_part(self) -> QuadElem | None:
        """The Q(omega) value if self has no a-dependence, else None."""
        if all(c.is_zero() for c in self.coeffs[1:]):
            return self.coeffs[0]
        return None

    def evaluate(self, a_value: complex) -> complex:
        return sum(complex(c) * a_value ** i for i, c in enumerate(self.coeffs))

    def __eq__(self, other):
        try:
            o = TowerElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        bp = self.base_part()
        if bp is not None:
            return hash(bp)
        return hash(self.coeffs)

    def __repr__(self):
        return f"TowerElem({list(self.coeffs)!r})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mon = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            terms.append(f"({c})" + (f"*{mon}" if mon else ""))
        return " + ".join(terms) if terms else "0"


def _reduce_tower(cs: list) -> list:
    cs = list(cs)
    for k in range(len(cs) - 1, TOWER_DEG - 1, -1):
        c = cs[k]
        if not c.is_zero():
            cs[k - TOWER_DEG] = cs[k - TOWER_DEG] + c * TOWER_CONST
    return cs[:TOWER_DEG]


def fifth_roots_of_27() -> list[complex]:
    """The five complex values of a with a^5 = 27, principal one first."""
    import cmath

    r = 27 ** 0.2
    return [r * cmath.exp(2j * cmath.pi * k / 5) for k in range(5)]


def field_coerce(x, like):
    """Coerce x into the field that ``like`` lives in."""
    if isinstance(like, TowerElem):
        return TowerElem.coerce(x)
    if isinstance(like, QuadElem):
        return QuadElem.coerce(x)
    if isinstance(x, int):
        return Fraction(x)
    return x


def is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def inverse(x):
    if hasattr(x, "inverse"):
        return x.inverse()
    if x == 0:
        raise ArithError("division by zero")
    return Fraction(1) / x


# ---------------------------------------------------------------------------
# truncated power series


class TruncSeries:
    """sum_{k<=N} c_k var^k with coefficients in a field.

    Coefficients past the order are unknown, not zero, so binary
    operations truncate to the smaller order.
    """

    __slots__ = ("var", "order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int | None = None, var: str = "Q"):
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("series order must be non-negative")
        zero = _zero_like(cs)
        cs = cs[: order + 1] + [zero] * (order + 1 - len(cs))
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def zero(cls, order: int, var: str = "Q", like=0) -> "TruncSeries":
        return cls([field_coerce(0, like)] * (order + 1), order, var)

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1, var: str = "Q") -> "TruncSeries":
        zero = field_coerce(0, coeff)
        cs = [zero] * (order + 1)
        if k <= order:
            cs[k] = field_coerce(coeff, coeff)
        return cls(cs, order, var)

    def _lift(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            if other.var != self.var:
                raise ValueError(f"series in {self.var} and {other.var} do not mix")
            return other
        return TruncSeries.monomial(0, self.order, other, self.var)

    def __add__(self, other):
        o = self._lift(other)
        n = min(self.order, o.order)
        return TruncSeries([self.coeffs[k] + o.coeffs[k] for k in range(n + 1)], n, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([c * other for c in self.coeffs], self.order, self.var)
        o = self._lift(other)
        n = min(self.order, o.order)
        out = [self.coeffs[0] * o.coeffs[0] * 0] * (n + 1)
        for i in range(n + 1):
            x = self.coeffs[i]
            if is_zero(x):
                continue
            for j in range(n + 1 - i):
                y = o.coeffs[j]
                if not is_zero(y):
                    out[i + j] = out[i + j] + x * y
        return TruncSeries(out, n, self.var)

    def __rmul__(self, other):
        return self * other

    def theta(self) -> "TruncSeries":
        return TruncSeries([k * c for k, c in enumerate(self.coeffs)], self.order, self.var)

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.coeffs, min(order, self.order), self.var)

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.var == other.var and all(
            self.coeffs[k] == other.coeffs[k] for k in range(n + 1)
        )

    def __hash__(self):
        return hash((self.var, self.order, self.coeffs))

    def __repr__(self):
        return f"TruncSeries({list(self.coeffs)!r}, order={self.order}, var={self.var!r})"


def _zero_like(cs):
    for c in cs:
        if isinstance(c, (QuadElem, TowerElem)):
            return field_coerce(0, c)
    return Fraction(0)


def series_theta(s: TruncSeries) -> TruncSeries:
    return s.theta()


# ---------------------------------------------------------------------------
# linear algebra over a field


def rank(matrix: Sequence[Sequence]) -> int:
    """Rank over the field of the entries (ints/Fractions are taken over Q)."""
    rows = [[_as_field(x) for x in row] for row in matrix]
    return _echelon(rows)[0]


def _as_field(x):
    return Fraction(x) if isinstance(x, int) else x


def _echelon(rows):
    rows = [list(r) for r in rows]
    if not rows:
        return 0, rows
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = inverse(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r, rows


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list:
    """Unique solution of a square nonsingular system."""
    n = len(matrix)
    aug = [[_as_field(x) for x in row] + [_as_field(b)] for row, b in zip(matrix, rhs)]
    r, red = _echelon(aug)
    if r < n or any(is_zero(red[i][i]) for i in range(n)):
        raise ArithError("singular system")
    return [red[i][n] for i in range(n)]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A or not B:
        return [[] for _ in A]
    cols = len(B[0])
    out = []
    for row in A:
        out_row = []
        for j in range(cols):
            acc = 0
            for k, x in enumerate(row):
                y = B[k][j]
                if not is_zero(x) and not is_zero(y):
                    acc = x * y + acc
            out_row.append(acc)
        out.append(out_row)
    return out


def transpose(A: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# integer matrices


class IntMatrix:
    """Integer matrix with Smith normal form."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[int]], cols: int | None = None):
        ent = tuple(tuple(int(x) for x in row) for row in entries)
        if cols is None:
            cols = len(ent[0]) if ent else 0
        if any(len(row) != cols for row in ent):
            raise ValueError("ragged integer matrix")
        object.__setattr__(self, "rows", len(ent))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def zeros(cls, r: int, c: int) -> "IntMatrix":
        return cls([[0] * c for _ in range(r)], c)

    @classmethod
    def eye(cls, n: int) -> "IntMatrix":
        return cls(identity(n), n)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return IntMatrix(mat_mul(self.entries, other.entries) if self.rows else [], other.cols)

    def T(self) -> "IntMatrix":
        return IntMatrix(transpose(self.entries) if self.rows else [], self.rows)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    def rank(self) -> int:
        return len(self.invariant_factors())

    def invariant_factors(self) -> list[int]:
        _, D, _ = snf(self)
        return [D.entries[i][i] for i in range(min(D.rows, D.cols)) if D.entries[i][i] != 0]


def snf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (U, D, V) with U @ M @ V == D.

    U and V are unimodular, D is diagonal with non-negative entries
    and d_i | d_{i+1}.
    """
    m, n = M.rows, M.cols
    A = [list(r) for r in M.entries]
    U = identity(m)
    V = identity(n)

    def row_op(i, j, q):  # row_i -= q*row_j
        A[i] = [x - q * y for x, y in zip(A[i], A[j])]
        U[i] = [x - q * y for x, y in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q*col_j
        for r in A:
            r[i] -= q * r[j]
        for r in V:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_op(i, t, A[i][t] // A[t][t])
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    col_op(j, t, A[t][j] // A[t][t])
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: fold a non-divisible entry into row t
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            i, _ = bad
            A[t] = [x + y for x, y in zip(A[t], A[i])]
            U[t] = [x + y for x, y in zip(U[t], U[i])]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return IntMatrix(U, m), IntMatrix(A, n), IntMatrix(V, n)


def is_unimodular(M: IntMatrix) -> bool:
    if M.rows != M.cols:
        return False
    return abs(det_int(M)) == 1


def det_int(M: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    n = M.rows
    if n == 0:
        return 1
    A = [list(r) for r in M.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k]), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank_fraction_free(M: IntMatrix) -> int:
    """Rank over Q by fraction-free (Bareiss style) elimination."""
    A = [list(r) for r in M.entries]
    m, n = M.rows, M.cols
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            if A[i][c]:
                f, p = A[i][c], A[r][c]
                A[i] = [p * x - f * y for x, y in zip(A[i], A[r])]
                g = 0
                for x in A[i]:
                    g = gcd(g, x)
                if g > 1:
                    A[i] = [x // g for x in A[i]]
        r += 1
    return r


def cokernel_invariants(M: IntMatrix) -> list[int]:
    """Torsion invariants and free rank of Z^rows / image(M).

    Returns the list of non-unit invariant factors followed by zeros, one
    zero per free summand.
    """
    factors = M.invariant_factors()
    tors = [d for d in factors if d != 1]
    return tors + [0] * (M.rows - len(factors))

"""Exact big-integer arithmetic over Z_M.

Everything here is pure and allocation-light: a Modulus wraps the prime M,
FieldElem is a canonical residue with operator overloads, and the free
functions (mod_inv, mod_pow, reduce_rational, kth_root) are the arithmetic
core the rest of the package builds on. Canonical representatives live in
[0, M); negative intermediates are reduced with the Euclidean remainder,
which is what Python's % already gives for a positive modulus.
"""

from dataclasses import dataclass
import math
import random

from .errors import NonInvertible, Unsupported

# Small moduli accepted without a primality test.
WHITELISTED_MODULI = frozenset({17, 257})

MILLER_RABIN_ROUNDS = 64  # error < 4^-64 = 2^-128 per the Modulus contract


def is_probable_prime(n: int, rounds: int = MILLER_RABIN_ROUNDS) -> bool:
    """Miller-Rabin with `rounds` random bases."""
    if n < 2:
        return False
    if n in (2, 3):
        return True
    if n % 2 == 0:
        return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = random.randrange(2, n - 1)
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


@dataclass(frozen=True)
class Modulus:
    """The ring modulus M with a primality promise."""

    M: int
    is_prime: bool = True

    def __post_init__(self):
        if self.M < 3:
            raise ValueError("modulus must be >= 3")
        if self.is_prime and self.M not in WHITELISTED_MODULI:
            if not is_probable_prime(self.M):
                raise ValueError(f"modulus {self.M} failed the primality test")

    def __repr__(self):
        return f"Modulus({self.M})"


class FieldElem:
    """Canonical residue in [0, M) with ring arithmetic.

    Mixed arithmetic with plain ints is allowed and reduces the int
    first; two FieldElems must share a modulus.
    """

    __slots__ = ("value", "mod")

    def __init__(self, value: int, mod: Modulus):
        self.value = value % mod.M
        self.mod = mod

    def _other_value(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.mod.M != self.mod.M:
                raise ValueError("mixed moduli")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._other_value(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.value + v, self.mod)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other_value(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.value - v, self.mod)

    def __rsub__(self, other):
        v = self._other_value(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(v - self.value, self.mod)

    def __mul__(self, other):
        v = self._other_value(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.value * v, self.mod)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(-self.value, self.mod)

    def __pow__(self, exponent: int):
        try:
            return FieldElem(pow(self.value, exponent, self.mod.M), self.mod)
        except ValueError:
            raise NonInvertible(
                f"{self.value} has no inverse mod {self.mod.M}") from None

    def inverse(self):
        return mod_inv(self)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.mod.M == other.mod.M and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.mod.M
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.mod.M))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElem({self.value} mod {self.mod.M})"


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:  # keep g nonnegative for negative inputs
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def mod_inv(a: FieldElem) -> FieldElem:
    """Multiplicative inverse via extended Euclid."""
    g, x, _ = xgcd(a.value, a.mod.M)
    if g != 1:
        raise NonInvertible(f"gcd({a.value}, {a.mod.M}) = {g}")
    return FieldElem(x, a.mod)


def mod_pow(base: FieldElem, exponent: int) -> FieldElem:
    """base**exponent mod M for exponent >= 0."""
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    return FieldElem(pow(base.value, exponent, base.mod.M), base.mod)


def reduce_rational(B: int, i: int, K: int, mod: Modulus) -> FieldElem:
    """Field image of the rational point B + i/K: ((B mod M)*K + i) * K^-1."""
    g = math.gcd(K % mod.M, mod.M)
    if g != 1:
        raise NonInvertible(f"gcd({K}, {mod.M}) = {g}")
    Kinv = mod_inv(FieldElem(K, mod))
    return FieldElem((B % mod.M) * K + i, mod) * Kinv


EXHAUSTIVE_ROOT_BOUND = 1 << 16


def kth_root(p: FieldElem, K: int) -> FieldElem | None:
    """Some r with r^K = p mod M, or None when no such r exists.

    Existence is decided exactly: in the cyclic group of units mod a
    prime M, r^K = p is solvable iff p^((M-1)/d) = 1 with d = gcd(K, M-1).
    A witness is produced by exhaustive search below 2^16 and by exponent
    inversion when gcd(K, M-1) = 1; the remaining case (large M, d > 1)
    raises Unsupported since nothing in the default protocol path needs it.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    M = p.mod.M
    if not p.mod.is_prime:
        raise Unsupported("kth_root requires a prime modulus")
    if math.gcd(p.value, M) != 1:
        raise NonInvertible(f"gcd({p.value}, {M}) != 1")
    d = math.gcd(K, M - 1)
    if pow(p.value, (M - 1) // d, M) != 1:
        return None
    if M < EXHAUSTIVE_ROOT_BOUND:
        for r in range(1, M):
            if pow(r, K, M) == p.value:
                return FieldElem(r, p.mod)
        raise AssertionError("existence test passed but no root found")
    if d == 1:
        Kinv = pow(K, -1, M - 1)
        return FieldElem(pow(p.value, Kinv, M), p.mod)
    raise Unsupported(
        f"a {K}-th root exists mod {M} but the search is out of scope "
        "(modulus >= 2^16 with gcd(K, M-1) > 1)")


class EvalPoint:
    """Exact rational grid point t = n/K plus its field image mod M.

    The rational form drives oscillator indexing (which needs the exact
    numerator); the field image drives all Z_M arithmetic. Integer shifts
    move the numerator by multiples of K, so `t + 3` is the grid point
    three whole units to the right.
    """

    __slots__ = ("n", "K", "mod", "img")

    def __init__(self, n: int, K: int, mod: Modulus):
        if K < 1:
            raise ValueError("grid denominator must be >= 1")
        self.n = n
        self.K = K
        self.mod = mod
        self.img = reduce_rational(0, n, K, mod)

    def shift(self, delta: int) -> "EvalPoint":
        return EvalPoint(self.n + delta * self.K, self.K, self.mod)

    def __add__(self, delta: int):
        if not isinstance(delta, int):
            return NotImplemented
        return self.shift(delta)

    def floor(self) -> int:
        return self.n // self.K

    def frac_num(self) -> int:
        """Fractional numerator i in [0, K): t = floor(t) + i/K."""
        return self.n - (self.n // self.K) * self.K

    def __eq__(self, other):
        if not isinstance(other, EvalPoint):
            return NotImplemented
        return (self.n, self.K, self.mod.M) == (other.n, other.K, other.mod.M)

    def __hash__(self):
        return hash((self.n, self.K, self.mod.M))

    def __repr__(self):
        return f"EvalPoint({self.n}/{self.K} mod {self.mod.M})"

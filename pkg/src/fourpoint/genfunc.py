"""The masked discrete generating function s_M(t).

s_M(t) = (p^t + q_i*phi(C*t) + q_j*psi(C*t)) / t  (all mod M)

p^t at a rational t is not modular exponentiation, so three interchangeable
conventions define it; each satisfies the only property the invariant needs,
exp_at(t + d) = exp_at(t) * p^d for integer d at a fixed fractional part:

  RootBased      r^n with r^K = p           (requires the root to exist)
  RelativeScale  A * p^floor(t)             (fixed invertible anchor A)
  PrfMasked      p^floor(t) * PRF(i, K)     (default; mask in [1, M-1])

The PRF mask depends only on the fractional numerator i and K, which are
shared by all four shifted evaluation points of a session, so the mask
cancels out of the invariant ratio.
"""

from dataclasses import dataclass
import math
from hashlib import sha3_256

from .errors import MissingRoot, NonInvertible, SingularPoint
from .modmath import EvalPoint, FieldElem, Modulus, kth_root, mod_inv, mod_pow
from .oscillator import _INDEX_WIDTH, _OscBase, eval_at


@dataclass(frozen=True)
class RootBased:
    """p^(n/K) := r^n for a fixed K-th root r of p."""

    r: FieldElem


@dataclass(frozen=True)
class RelativeScale:
    """p^(a + i/K) := A * p^a with a fixed invertible anchor A."""

    A: FieldElem

    def __post_init__(self):
        if math.gcd(self.A.value, self.A.mod.M) != 1:
            raise NonInvertible(f"anchor {self.A.value} not invertible")


@dataclass(frozen=True)
class PrfMasked:
    """p^(a + i/K) := p^a * PRF(i, K), the keyed default."""

    key: bytes


def root_based(p: FieldElem, K: int) -> RootBased:
    """Build the root convention, failing when no K-th root of p exists."""
    r = kth_root(p, K)
    if r is None:
        raise MissingRoot(f"no {K}-th root of {p.value} mod {p.mod.M}")
    return RootBased(r)


def _prf_mask(key: bytes, i: int, K: int, mod: Modulus) -> int:
    """Mask in [1, M-1]; never 0, so exp_at stays invertible."""
    digest = sha3_256(key + i.to_bytes(_INDEX_WIDTH, "big")
                      + K.to_bytes(_INDEX_WIDTH, "big")).digest()
    return int.from_bytes(digest, "big") % (mod.M - 1) + 1


def exp_at(conv, p: FieldElem, t: EvalPoint) -> FieldElem:
    """p^t under the chosen convention."""
    if isinstance(conv, RootBased):
        return conv.r ** t.n
    if isinstance(conv, RelativeScale):
        return conv.A * (p ** t.floor())
    if isinstance(conv, PrfMasked):
        mask = _prf_mask(conv.key, t.frac_num(), t.K, p.mod)
        return (p ** t.floor()) * mask
    raise TypeError(f"unknown exponent convention {conv!r}")


@dataclass(frozen=True)
class GenParams:
    """Everything s_M needs at one amplitude pair (q_i, q_j)."""

    p: FieldElem
    q_i: FieldElem
    q_j: FieldElem
    C: int
    phi: _OscBase
    psi: _OscBase
    conv: object
    mod: Modulus

    def __post_init__(self):
        if math.gcd(self.p.value, self.mod.M) != 1:
            raise NonInvertible(f"base {self.p.value} shares a factor with M")


def s_M(gp: GenParams, t: EvalPoint) -> FieldElem:
    """(p^t + q_i*phi(Ct) + q_j*psi(Ct)) / t mod M."""
    img = t.img
    if img.value == 0:
        raise SingularPoint(f"t = {t!r} reduces to 0 mod M")
    numerator = (exp_at(gp.conv, gp.p, t)
                 + gp.q_i * eval_at(gp.phi, t, gp.C)
                 + gp.q_j * eval_at(gp.psi, t, gp.C))
    return numerator * mod_inv(img)


def salt_generator(H_of_salt: FieldElem, p: FieldElem, i: int) -> FieldElem:
    """Salt-anchored exponent H(s) * p^i.

    Different salts give different streams whose pairwise ratios
    salt_generator(a) / salt_generator(b) = p^(a-b) are salt-independent.
    """
    if math.gcd(H_of_salt.value, H_of_salt.mod.M) != 1:
        raise NonInvertible("salt image not invertible")
    return H_of_salt * mod_pow(p, i)

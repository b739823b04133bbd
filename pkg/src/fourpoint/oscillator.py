"""Antiperiodic integer-valued pseudorandom oscillators on the rational grid.

An oscillator is a total function on integer indices j built from a base
table of P = K*C values: index j falls in block floor(j / P), and odd
blocks negate the looked-up value, so f(j + P) = -f(j) and f(j + 2P) = f(j).
Euclidean floor/mod keep those identities true for negative j as well.

Two interchangeable modes exist: Table (the P values held in memory) and
OnDemandPRF (each value recomputed from a keyed hash when needed). Both
draw per-index values from the same keyed PRF, so they agree everywhere.
"""

from dataclasses import dataclass
from hashlib import sha3_256

from .errors import SeedTooLarge
from .modmath import EvalPoint, FieldElem, Modulus

# Auto mode in generate(): precompute a table only when it is this small,
# otherwise evaluate on demand. Tables may be built explicitly up to
# TABLE_CAP entries; beyond that construction refuses.
TABLE_AUTO_CAP = 1 << 12
TABLE_CAP = 1 << 20

_INDEX_WIDTH = 48  # bytes; covers indices below 2^384


@dataclass(frozen=True)
class OscSeed:
    """Explicit seed table: P = K*C integers, one antiperiod block."""

    values: tuple
    K: int
    C: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if self.K < 1 or self.C < 1:
            raise ValueError("K and C must be >= 1")
        if len(self.values) != self.K * self.C:
            raise ValueError(
                f"seed length {len(self.values)} != K*C = {self.K * self.C}")

    @property
    def P(self) -> int:
        return self.K * self.C


def _prf_value(key: bytes, m: int, mod: Modulus) -> int:
    digest = sha3_256(key + m.to_bytes(_INDEX_WIDTH, "big")).digest()
    return int.from_bytes(digest, "big") % mod.M


class _OscBase:
    """Shared index bookkeeping for both modes."""

    mode = "?"

    def __init__(self, K: int, C: int, mod: Modulus):
        self.K = K
        self.C = C
        self.P = K * C
        self.mod = mod

    def seed_value(self, m: int) -> int:
        raise NotImplementedError


class TableOscillator(_OscBase):
    """Oscillator backed by an in-memory table of canonical residues."""

    mode = "table"

    def __init__(self, seed: OscSeed, mod: Modulus):
        super().__init__(seed.K, seed.C, mod)
        if seed.P > TABLE_CAP:
            raise SeedTooLarge(f"P = {seed.P} exceeds table cap {TABLE_CAP}")
        self.table = tuple(v % mod.M for v in seed.values)

    def seed_value(self, m: int) -> int:
        return self.table[m]


class PrfOscillator(_OscBase):
    """Oscillator recomputing each table entry from a keyed PRF."""

    mode = "prf"

    def __init__(self, key: bytes, K: int, C: int, mod: Modulus):
        super().__init__(K, C, mod)
        self.key = key

    def seed_value(self, m: int) -> int:
        return _prf_value(self.key, m, self.mod)

    def as_table(self) -> TableOscillator:
        """Materialize the full table (must fit under TABLE_CAP)."""
        if self.P > TABLE_CAP:
            raise SeedTooLarge(f"P = {self.P} exceeds table cap {TABLE_CAP}")
        values = tuple(self.seed_value(m) for m in range(self.P))
        return TableOscillator(OscSeed(values, self.K, self.C), self.mod)


def generate(S: bytes, z: bytes, label: str, K: int, C: int,
             mod: Modulus) -> _OscBase:
    """Derive the keyed oscillator for one session.

    The key is bound to the secret, nonce, and oscillator label, so the
    "phi" and "psi" streams are independent. Small tables are precomputed;
    large ones stay in on-demand mode. Both choices evaluate identically.
    """
    if label not in ("phi", "psi"):
        raise ValueError("label must be 'phi' or 'psi'")
    key = sha3_256(b"IBC.osc." + label.encode("ascii") + S + z).digest()
    prf = PrfOscillator(key, K, C, mod)
    if prf.P <= TABLE_AUTO_CAP:
        return prf.as_table()
    return prf


def eval_index(osc: _OscBase, j: int) -> FieldElem:
    """Oscillator value at integer index j, reduced mod M.

    divmod against the positive P gives the Euclidean block/offset pair,
    so negative indices extend the antiperiodic pattern leftward.
    """
    block, m = divmod(j, osc.P)
    v = osc.seed_value(m)
    if block % 2:
        v = -v
    return FieldElem(v, osc.mod)


def eval_arg(osc: _OscBase, x: EvalPoint) -> FieldElem:
    """Oscillator value at its own grid argument x = m/K (index m).

    In this argument the function is antiperiodic with antiperiod C:
    eval_arg(x + C) = -eval_arg(x) for every C, since a C shift moves the
    index by C*K = P exactly.
    """
    if x.K != osc.K:
        raise ValueError(f"grid mismatch: point K={x.K}, oscillator K={osc.K}")
    return eval_index(osc, x.n)


def eval_at(osc: _OscBase, t: EvalPoint, C: int) -> FieldElem:
    """Oscillator evaluated at argument C*t, the generating-function form.

    For t = n/K the argument C*t sits at index (C*t)*K = C*n. A unit shift
    of t moves the index by C*K = P, so in t this composition flips sign
    per whole step: eval_at(t + 1) = -eval_at(t).
    """
    if t.K != osc.K:
        raise ValueError(f"grid mismatch: point K={t.K}, oscillator K={osc.K}")
    if C != osc.C:
        raise ValueError(f"period mismatch: argument C={C}, oscillator C={osc.C}")
    return eval_index(osc, C * t.n)


def export_seed(osc: _OscBase) -> str:
    """Seed table as decimal integers, one per line (fixture format)."""
    if isinstance(osc, PrfOscillator):
        osc = osc.as_table()
    return "\n".join(str(v) for v in osc.table) + "\n"


def import_seed(text: str, K: int, C: int, mod: Modulus) -> TableOscillator:
    """Inverse of export_seed."""
    values = tuple(int(line) for line in text.split())
    return TableOscillator(OscSeed(values, K, C), mod)

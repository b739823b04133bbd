"""The symmetric protocol: session derivation, generation, verification.

Both parties share a secret S. For each message the sender picks a fresh
32-byte nonce z; every session parameter (base p, grid K, oscillator
period C, fractional index i, integer offset B, amplitudes q1..q4, both
oscillator keys, the exponent-mask key) is derived from (S, z) by SHA3-256
under fixed ASCII domain-separation tags, so the receiver reconstructs the
whole session from the nonce alone.

The sender evaluates the generating function at four aligned points and
transmits (s1, s3, u, z, h_check): 132 bytes on the wire. The receiver
recomputes s0 and s2, solves the invariant identity for v, and accepts
only if the check hash over (S, v, s1, s3, u, z) matches.

Recovery is arithmetic mod M, so v round-trips exactly only when v < M;
profiles cap v at min(2^v_bits, M) for that reason.
"""

from dataclasses import dataclass
import json
from hashlib import sha3_256

from .errors import (AbortNonInvertible, AbortSingular, AbortZeroIndex,
                     BadLength, FieldOverflow, NonInvertible, ProtocolAbort,
                     RejectDenominator, RejectHash, RejectRange,
                     RejectSession, SingularDenominator, SingularPoint,
                     Unsupported)
from .genfunc import GenParams, PrfMasked, s_M
from .invariant import check_denominator, recover_v
from .modmath import EvalPoint, FieldElem, Modulus
from . import oscillator

TAG_P = b"IBC.p"
TAG_K = b"IBC.K"
TAG_C = b"IBC.C"
TAG_T = b"IBC.t"
TAG_B = b"IBC.B"
TAG_Q = b"IBC.q"
TAG_CHECK = b"IBC.check"
TAG_PRF = b"IBC.prf"

MESSAGE_LEN = 132
NONCE_LEN = 32
_FIELD_WIDTH = 32  # bytes per serialized field element
_CHECK_V_WIDTH = 8  # bytes for v inside the check hash

# 2^256 - 2^32 - 977, the secp256k1 field prime; any 256-bit prime works.
PRODUCTION_PRIME = (1 << 256) - (1 << 32) - 977


def _h(*parts: bytes) -> bytes:
    return sha3_256(b"".join(parts)).digest()

def _h_int(*parts: bytes) -> int:
    return int.from_bytes(_h(*parts), "big")


@dataclass(frozen=True)
class Profile:
    """Parameter envelope: modulus, grid/period ranges, u/v bounds."""

    name: str
    mod: Modulus
    K_min: int
    K_max: int
    C_min: int
    C_max: int
    u_bits: int
    v_bits: int
    hash_name: str = "sha3-256"

    def __post_init__(self):
        if self.hash_name != "sha3-256":
            raise Unsupported(f"hash {self.hash_name!r} not supported")
        if self.mod.M.bit_length() > 256:
            raise ValueError("modulus too wide for the 32-byte wire fields")
        if not (2 <= self.K_min <= self.K_max):
            raise ValueError("bad K range")
        if not (2 <= self.C_min <= self.C_max):
            raise ValueError("bad C range")

    @property
    def u_bound(self) -> int:
        return 1 << self.u_bits

    @property
    def v_bound(self) -> int:
        """Exclusive cap on v: both the profile width and exact recovery."""
        return min(1 << self.v_bits, self.mod.M)

    @property
    def min_secret_len(self) -> int:
        """32 bytes at production scale, 8 at desk scale."""
        return 32 if self.mod.M.bit_length() >= 64 else 8


TOY = Profile("toy", Modulus(257), 2, 1 << 16, 2, 1 << 10,
              u_bits=16, v_bits=16)
MINI = Profile("mini", Modulus(17), 2, 1 << 8, 2, 1 << 6,
               u_bits=8, v_bits=4)
PRODUCTION = Profile("production", Modulus(PRODUCTION_PRIME),
                     1 << 160, 1 << 256, 1 << 24, 1 << 32,
                     u_bits=32, v_bits=64)

_BUILTIN_PROFILES = {p.name: p for p in (TOY, MINI, PRODUCTION)}


def get_profile(name: str) -> Profile:
    try:
        return _BUILTIN_PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; "
                         f"choose from {sorted(_BUILTIN_PROFILES)}") from None


def profile_to_dict(profile: Profile) -> dict:
    return {
        "name": profile.name,
        "M": str(profile.mod.M),
        "K_min": profile.K_min, "K_max": profile.K_max,
        "C_min": profile.C_min, "C_max": profile.C_max,
        "u_bits": profile.u_bits, "v_bits": profile.v_bits,
        "hash": profile.hash_name,
    }


def profile_from_dict(d: dict) -> Profile:
    return Profile(d["name"], Modulus(int(d["M"])),
                   int(d["K_min"]), int(d["K_max"]),
                   int(d["C_min"]), int(d["C_max"]),
                   int(d["u_bits"]), int(d["v_bits"]),
                   d.get("hash", "sha3-256"))


def load_profile(path) -> Profile:
    with open(path, "r", encoding="ascii") as fh:
        return profile_from_dict(json.load(fh))


def dump_profile(profile: Profile, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump(profile_to_dict(profile), fh, indent=2, sort_keys=True)
        fh.write("\n")


@dataclass(frozen=True)
class Session:
    """Everything derived from (S, z) under one profile."""

    S: bytes
    z: bytes
    profile: Profile
    p: FieldElem
    B: int
    K: int
    C: int
    i: int
    t: EvalPoint
    q1: FieldElem
    q2: FieldElem
    q3: FieldElem
    q4: FieldElem
    phi: object
    psi: object
    conv: PrfMasked

    @property
    def gen_numer(self) -> GenParams:
        """Amplitude pair (q1, q2): produces s0 and s1."""
        return GenParams(self.p, self.q1, self.q2, self.C,
                         self.phi, self.psi, self.conv, self.profile.mod)

    @property
    def gen_denom(self) -> GenParams:
        """Amplitude pair (q3, q4): produces s2 and s3."""
        return GenParams(self.p, self.q3, self.q4, self.C,
                         self.phi, self.psi, self.conv, self.profile.mod)


def derive_session(S: bytes, z: bytes, profile: Profile) -> Session:
    """Deterministically expand (S, z) into a full Session.

    Raises AbortZeroIndex when the fractional index draws 0 and
    AbortSingular when the evaluation point collides with 0 mod M (or K
    shares a factor with M); callers redraw the nonce and retry.
    """
    if len(S) < profile.min_secret_len:
        raise ValueError(f"secret must be >= {profile.min_secret_len} bytes")
    if len(z) != NONCE_LEN:
        raise ValueError(f"nonce must be exactly {NONCE_LEN} bytes")
    mod = profile.mod
    M = mod.M

    p = FieldElem(_h_int(TAG_P, S, z) % (M - 2) + 2, mod)
    K = _h_int(TAG_K, S, z) % (profile.K_max - profile.K_min + 1) + profile.K_min
    C = _h_int(TAG_C, S, z) % (profile.C_max - profile.C_min + 1) + profile.C_min
    i = _h_int(TAG_T, S, z) % K
    if i == 0:
        raise AbortZeroIndex("fractional index i = 0")
    B = _h_int(TAG_B, S, z) % M
    try:
        t = EvalPoint(B * K + i, K, mod)
    except NonInvertible as exc:
        raise AbortSingular(f"grid denominator not invertible: {exc}") from None
    if t.img.value == 0:
        raise AbortSingular("base point t reduces to 0 mod M")

    q1, q2, q3, q4 = (FieldElem(_h_int(TAG_Q, S, z, bytes([k])), mod)
                      for k in (1, 2, 3, 4))
    phi = oscillator.generate(S, z, "phi", K, C, mod)
    psi = oscillator.generate(S, z, "psi", K, C, mod)
    conv = PrfMasked(_h(TAG_PRF, S, z))
    return Session(S, z, profile, p, B, K, C, i, t,
                   q1, q2, q3, q4, phi, psi, conv)


@dataclass(frozen=True)
class Message:
    """The transmitted tuple; serializes to exactly 132 bytes."""

    s1: FieldElem
    s3: FieldElem
    u: int
    z: bytes
    h_check: bytes

    def __post_init__(self):
        if not 0 <= self.u < (1 << 32):
            raise ValueError("u out of 32-bit range")
        if len(self.z) != NONCE_LEN:
            raise ValueError("nonce must be 32 bytes")
        if len(self.h_check) != 32:
            raise ValueError("check hash must be 32 bytes")


def compute_check(S: bytes, v: int, s1: FieldElem, s3: FieldElem,
                  u: int, z: bytes) -> bytes:
    """Binding hash over (S, v, s1, s3, u, z) with fixed field widths."""
    return _h(TAG_CHECK, S,
              v.to_bytes(_CHECK_V_WIDTH, "big"),
              s1.value.to_bytes(_FIELD_WIDTH, "big"),
              s3.value.to_bytes(_FIELD_WIDTH, "big"),
              u.to_bytes(4, "big"), z)


def alice_generate(sess: Session, u: int, v: int) -> Message:
    """Sender side: four evaluations, denominator check, check hash."""
    profile = sess.profile
    if not 1 <= u < profile.u_bound:
        raise ValueError(f"u must be in [1, {profile.u_bound})")
    if not 0 <= v < profile.v_bound:
        raise ValueError(f"v must be in [0, {profile.v_bound})")
    try:
        s_M(sess.gen_numer, sess.t)                        # s0
        s1 = s_M(sess.gen_numer, sess.t + (2 * v + 1))
        s_M(sess.gen_denom, sess.t + 2 * u)                # s2
        s3 = s_M(sess.gen_denom, sess.t + (2 * u + 2 * v + 1))
    except SingularPoint as exc:
        raise AbortSingular(str(exc)) from None
    if not check_denominator(s1, s3, sess.p, u, profile.mod):
        raise AbortNonInvertible("recovery denominator not invertible")
    h_check = compute_check(sess.S, v, s1, s3, u, sess.z)
    return Message(s1, s3, u, sess.z, h_check)


def bob_verify(S: bytes, msg: Message, profile: Profile) -> int:
    """Receiver side: rederive, recover v, check hash and range.

    Raises a VerificationError subclass naming the first failed check. A
    recovered value too large for the 8-byte check encoding is rejected
    as out of range without a digest comparison.
    """
    try:
        sess = derive_session(S, msg.z, profile)
    except ProtocolAbort as exc:
        raise RejectSession(f"session recomputation aborted: {exc}") from None
    try:
        s0 = s_M(sess.gen_numer, sess.t)
        s2 = s_M(sess.gen_denom, sess.t + 2 * msg.u)
    except SingularPoint as exc:
        raise RejectSession(f"evaluation point singular: {exc}") from None
    if not check_denominator(msg.s1, msg.s3, sess.p, msg.u, profile.mod):
        raise RejectDenominator("denominator check failed")
    try:
        v_star = recover_v(s0, msg.s1, s2, msg.s3, sess.t.img,
                           msg.u, sess.p, profile.mod)
    except SingularDenominator as exc:
        raise RejectDenominator(str(exc)) from None
    v = v_star.value
    if v >= 1 << (8 * _CHECK_V_WIDTH):
        raise RejectRange(f"recovered value {v} exceeds the check encoding")
    if compute_check(S, v, msg.s1, msg.s3, msg.u, msg.z) != msg.h_check:
        raise RejectHash("check hash mismatch")
    if v >= profile.v_bound:
        raise RejectRange(f"recovered value {v} outside [0, {profile.v_bound})")
    return v


def serialize(msg: Message) -> bytes:
    """s1 (32B BE) || s3 (32B BE) || u (4B BE) || z (32B) || h_check (32B)."""
    return (msg.s1.value.to_bytes(_FIELD_WIDTH, "big")
            + msg.s3.value.to_bytes(_FIELD_WIDTH, "big")
            + msg.u.to_bytes(4, "big")
            + msg.z + msg.h_check)


def deserialize(data: bytes, profile: Profile) -> Message:
    """Inverse of serialize; strict length and field-range checks."""
    if len(data) != MESSAGE_LEN:
        raise BadLength(f"message must be {MESSAGE_LEN} bytes, got {len(data)}")
    M = profile.mod.M
    s1v = int.from_bytes(data[0:32], "big")
    s3v = int.from_bytes(data[32:64], "big")
    if s1v >= M or s3v >= M:
        raise FieldOverflow("field value >= M")
    u = int.from_bytes(data[64:68], "big")
    z = data[68:100]
    h_check = data[100:132]
    return Message(FieldElem(s1v, profile.mod), FieldElem(s3v, profile.mod),
                   u, z, h_check)

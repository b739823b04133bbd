import random

import pytest
from hypothesis import given, settings, strategies as st

from fourpoint.errors import (AbortNonInvertible, AbortSingular,
                              AbortZeroIndex, BadLength, FieldOverflow,
                              ProtocolAbort, RejectDenominator, RejectHash,
                              RejectRange, RejectSession, Unsupported,
                              VerificationError)
from fourpoint.modmath import FieldElem, Modulus, mod_pow
from fourpoint.protocol import (MESSAGE_LEN, MINI, PRODUCTION,
                                PRODUCTION_PRIME, TOY, Message, Profile,
                                alice_generate, bob_verify, compute_check,
                                derive_session, deserialize, dump_profile,
                                get_profile, load_profile, profile_from_dict,
                                profile_to_dict, serialize)

from conftest import fresh_session


class TestProfiles:
    def test_builtin_parameters(self):
        assert TOY.mod.M == 257 and TOY.v_bound == 257
        assert MINI.mod.M == 17 and MINI.v_bound == 16
        assert PRODUCTION.mod.M == PRODUCTION_PRIME
        assert PRODUCTION.v_bound == 1 << 64
        assert TOY.u_bound == 1 << 16
        assert TOY.min_secret_len == 8
        assert PRODUCTION.min_secret_len == 32

    def test_get_profile(self):
        assert get_profile("toy") is TOY
        with pytest.raises(ValueError):
            get_profile("nope")

    def test_dict_roundtrip(self):
        for p in (TOY, MINI, PRODUCTION):
            d = profile_to_dict(p)
            assert isinstance(d["M"], str)  # decimal string survives JSON
            assert profile_from_dict(d) == p

    def test_file_roundtrip(self, tmp_path):
        path = tmp_path / "prod.json"
        dump_profile(PRODUCTION, path)
        assert load_profile(path) == PRODUCTION

    def test_bad_hash_rejected(self):
        with pytest.raises(Unsupported):
            Profile("x", Modulus(257), 2, 4, 2, 4, 8, 8, hash_name="md5")

    def test_wide_modulus_rejected(self):
        wide = (1 << 260) + 45  # prime > 256 bits
        with pytest.raises(ValueError):
            Profile("x", Modulus(wide), 2, 4, 2, 4, 8, 8)

    def test_bad_ranges_rejected(self):
        with pytest.raises(ValueError):
            Profile("x", Modulus(257), 1, 4, 2, 4, 8, 8)
        with pytest.raises(ValueError):
            Profile("x", Modulus(257), 2, 4, 8, 4, 8, 8)


class TestDeriveSession:
    def test_deterministic(self):
        S, z = b"a shared secret!", b"\x05" * 32
        a = derive_session(S, z, TOY)
        b = derive_session(S, z, TOY)
        assert (a.p, a.B, a.K, a.C, a.i) == (b.p, b.B, b.K, b.C, b.i)
        assert a.t == b.t
        assert (a.q1, a.q2, a.q3, a.q4) == (b.q1, b.q2, b.q3, b.q4)

    def test_nonce_separates_sessions(self):
        S = b"a shared secret!"
        a = derive_session(S, b"\x00" * 32, TOY)
        b = derive_session(S, b"\x01" * 32, TOY)
        assert (a.p, a.B, a.K, a.i) != (b.p, b.B, b.K, b.i)

    def test_parameters_in_range(self, session_factory):
        for profile in (TOY, MINI):
            for _ in range(20):
                s = session_factory(profile)
                assert 2 <= s.p.value <= profile.mod.M - 1
                assert profile.K_min <= s.K <= profile.K_max
                assert profile.C_min <= s.C <= profile.C_max
                assert 1 <= s.i < s.K
                assert s.t.img.value != 0

    def test_secret_length_enforced(self):
        with pytest.raises(ValueError):
            derive_session(b"short", b"\x00" * 32, TOY)
        with pytest.raises(ValueError):
            derive_session(b"x" * 31, b"\x00" * 32, PRODUCTION)

    def test_nonce_length_exact(self):
        for bad in (b"", b"\x00" * 31, b"\x00" * 33):
            with pytest.raises(ValueError):
                derive_session(b"a shared secret!", bad, TOY)

    def test_derive_abort_paths_reachable(self):
        # mini scale makes both derivation aborts likely enough to hunt
        rng = random.Random(99)
        seen = set()
        for _ in range(5000):
            try:
                derive_session(rng.randbytes(8), rng.randbytes(32), MINI)
            except ProtocolAbort as exc:
                seen.add(type(exc))
            if seen == {AbortZeroIndex, AbortSingular}:
                break
        assert seen == {AbortZeroIndex, AbortSingular}

    def test_alice_abort_paths_reachable(self, session_factory):
        # shifted points can go singular; the recovery denominator can
        # block; both are Alice-side aborts, redrawn by callers
        rng = random.Random(98)
        seen = set()
        for _ in range(400):
            sess = session_factory(MINI)
            try:
                alice_generate(sess, rng.randrange(1, MINI.u_bound),
                               rng.randrange(0, MINI.v_bound))
            except ProtocolAbort as exc:
                seen.add(type(exc))
            if {AbortSingular, AbortNonInvertible} <= seen:
                break
        assert {AbortSingular, AbortNonInvertible} <= seen


class TestCheckHash:
    def kwargs(self):
        return dict(S=b"a shared secret!", v=7,
                    s1=FieldElem(5, Modulus(257)),
                    s3=FieldElem(9, Modulus(257)), u=3, z=b"\x00" * 32)

    def test_every_input_matters(self):
        base = compute_check(**self.kwargs())
        assert len(base) == 32
        for field, other in (("S", b"b shared secret!"), ("v", 8),
                             ("s1", FieldElem(6, Modulus(257))),
                             ("s3", FieldElem(10, Modulus(257))),
                             ("u", 4), ("z", b"\x01" + b"\x00" * 31)):
            kw = self.kwargs()
            kw[field] = other
            assert compute_check(**kw) != base, field


class TestRoundTrip:
    def test_toy(self, session_factory):
        rng = random.Random(31)
        done = 0
        while done < 40:
            sess = session_factory(TOY)
            u = rng.randrange(1, TOY.u_bound)
            v = rng.randrange(0, TOY.v_bound)
            try:
                msg = alice_generate(sess, u, v)
            except ProtocolAbort:
                continue
            assert bob_verify(sess.S, msg, TOY) == v
            done += 1

    def test_production(self, session_factory):
        rng = random.Random(32)
        done = 0
        while done < 5:
            sess = session_factory(PRODUCTION)
            u = rng.randrange(1, PRODUCTION.u_bound)
            v = rng.randrange(0, PRODUCTION.v_bound)
            try:
                msg = alice_generate(sess, u, v)
            except ProtocolAbort:
                continue
            assert bob_verify(sess.S, msg, PRODUCTION) == v
            done += 1

    def test_bounds_on_u_and_v(self, session_factory):
        sess = session_factory(TOY)
        for u, v in ((0, 1), (TOY.u_bound, 1), (-1, 1),
                     (1, -1), (1, TOY.v_bound)):
            with pytest.raises(ValueError):
                alice_generate(sess, u, v)

    def test_message_carries_session_nonce(self, session_factory):
        sess = session_factory(TOY)
        msg = alice_generate(sess, 1, 0)
        assert msg.z == sess.z
        assert msg.u == 1


def valid_pair(profile, seed=7):
    """One non-aborting (session, message) pair for tamper tests."""
    rng = random.Random(seed)
    while True:
        sess = fresh_session(profile, rng)
        try:
            return sess, alice_generate(sess, 5, min(17, profile.v_bound - 1))
        except ProtocolAbort:
            continue


class TestRejectionTaxonomy:
    def test_reject_hash(self):
        sess, msg = valid_pair(TOY)
        bad = Message(msg.s1, msg.s3, msg.u,
                      msg.z, bytes(32))
        with pytest.raises(RejectHash):
            bob_verify(sess.S, bad, TOY)

    def test_reject_denominator(self):
        sess, msg = valid_pair(TOY)
        # force s1*p^2u == s3, the blocked-recovery configuration
        forced = msg.s3 * mod_pow(sess.p, 2 * msg.u) ** -1
        bad = Message(forced, msg.s3, msg.u, msg.z, msg.h_check)
        with pytest.raises(RejectDenominator):
            bob_verify(sess.S, bad, TOY)

    def test_reject_range_on_production(self):
        # an s1 nudge lands v* in the huge middle of Z_M: out of range
        # for the 64-bit check encoding, rejected before any hashing
        sess, msg = valid_pair(PRODUCTION)
        bad = Message(msg.s1 + 1, msg.s3, msg.u, msg.z, msg.h_check)
        with pytest.raises((RejectRange, RejectDenominator)):
            bob_verify(sess.S, bad, PRODUCTION)

    def test_reject_session_on_aborting_nonce(self):
        # find a nonce whose derivation aborts, then present it to Bob
        rng = random.Random(4)
        S = None
        while S is None:
            cand = rng.randbytes(8)
            z = rng.randbytes(32)
            try:
                derive_session(cand, z, MINI)
            except ProtocolAbort:
                S = cand
        msg = Message(FieldElem(1, MINI.mod), FieldElem(2, MINI.mod),
                      1, z, bytes(32))
        with pytest.raises(RejectSession):
            bob_verify(S, msg, MINI)

    def test_wrong_secret_rejected(self):
        sess, msg = valid_pair(TOY)
        with pytest.raises(VerificationError):
            bob_verify(b"b" * len(sess.S), msg, TOY)


class TestWireFormat:
    def test_exact_length_and_layout(self):
        mod = Modulus(257)
        msg = Message(FieldElem(217, mod), FieldElem(23, mod), 5,
                      bytes(range(32)), bytes(reversed(range(32))))
        blob = serialize(msg)
        assert len(blob) == MESSAGE_LEN == 132
        want = ((217).to_bytes(32, "big") + (23).to_bytes(32, "big")
                + (5).to_bytes(4, "big") + bytes(range(32))
                + bytes(reversed(range(32))))
        assert blob == want

    def test_roundtrip(self, session_factory):
        rng = random.Random(44)
        for _ in range(25):
            sess = session_factory(TOY)
            try:
                msg = alice_generate(sess, rng.randrange(1, 100),
                                     rng.randrange(0, 100))
            except ProtocolAbort:
                continue
            assert deserialize(serialize(msg), TOY) == msg

    def test_bad_length(self):
        for n in (0, 131, 133, 264):
            with pytest.raises(BadLength):
                deserialize(b"\x00" * n, TOY)

    def test_field_overflow(self):
        blob = b"\xff" * 64 + (1).to_bytes(4, "big") + bytes(64)
        with pytest.raises(FieldOverflow):
            deserialize(blob, TOY)

    def test_cross_profile_overflow(self, session_factory):
        # production field values exceed the toy modulus
        sess = session_factory(PRODUCTION)
        msg = alice_generate(sess, 1, 0)
        with pytest.raises(FieldOverflow):
            deserialize(serialize(msg), TOY)

    @given(s1=st.integers(min_value=0, max_value=256),
           s3=st.integers(min_value=0, max_value=256),
           u=st.integers(min_value=0, max_value=(1 << 32) - 1))
    @settings(max_examples=60)
    def test_any_valid_fields_roundtrip(self, s1, s3, u):
        mod = Modulus(257)
        msg = Message(FieldElem(s1, mod), FieldElem(s3, mod), u,
                      b"\x09" * 32, b"\x0a" * 32)
        assert deserialize(serialize(msg), TOY) == msg

    def test_message_validation(self):
        mod = Modulus(257)
        ok = dict(s1=FieldElem(1, mod), s3=FieldElem(2, mod), u=1,
                  z=bytes(32), h_check=bytes(32))
        Message(**ok)
        for field, bad in (("u", 1 << 32), ("u", -1),
                           ("z", bytes(31)), ("h_check", bytes(33))):
            kw = dict(ok)
            kw[field] = bad
            with pytest.raises(ValueError):
                Message(**kw)

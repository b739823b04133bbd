import random

import pytest
from hypothesis import given, settings, strategies as st

from fourpoint.errors import SeedTooLarge
from fourpoint.modmath import EvalPoint, Modulus
from fourpoint.oscillator import (TABLE_AUTO_CAP, TABLE_CAP, OscSeed,
                                  PrfOscillator, TableOscillator, eval_arg,
                                  eval_at, eval_index, export_seed, generate,
                                  import_seed)

from oracles import unrolled_oscillator

M257 = Modulus(257)

# the worked K=4, C=2 seed: one full antiperiod of eight values
WALKTHROUGH = (2, -1, 0, 3, -2, 1, 1, -3)


def walkthrough_osc():
    return TableOscillator(OscSeed(WALKTHROUGH, 4, 2), M257)


class TestSeedValidation:
    def test_length_must_be_K_times_C(self):
        with pytest.raises(ValueError):
            OscSeed((1, 2, 3), 2, 2)

    def test_table_cap(self):
        seed = OscSeed(tuple(range(4)), 2, 2)
        assert TableOscillator(seed, M257).P == 4
        with pytest.raises(SeedTooLarge):
            PrfOscillator(b"k" * 32, 2048, 1024, M257).as_table()
        assert TABLE_AUTO_CAP < TABLE_CAP


class TestWalkthroughFixture:
    def test_one_period_matches_seed(self):
        osc = walkthrough_osc()
        for j, raw in enumerate(WALKTHROUGH):
            assert eval_index(osc, j).value == raw % 257

    def test_index_366(self):
        # 366 = 45*8 + 6: odd block count flips the sign of seed[6] = 1
        assert eval_index(walkthrough_osc(), 366).value == 256

    def test_against_unrolled_oracle(self):
        osc = walkthrough_osc()
        table = unrolled_oscillator(WALKTHROUGH, 257, -2 * osc.P, 2 * osc.P)
        for j, want in table.items():
            assert eval_index(osc, j).value == want, f"index {j}"

    def test_negative_index(self):
        osc = walkthrough_osc()
        assert eval_index(osc, -2).value == 256  # -seed[6] = -1
        assert eval_index(osc, -8) == -eval_index(osc, 0)


class TestAntiperiodicity:
    @given(j=st.integers(min_value=-10**9, max_value=10**9))
    def test_index_antiperiod(self, j):
        osc = walkthrough_osc()
        assert eval_index(osc, j + osc.P) == -eval_index(osc, j)
        assert eval_index(osc, j + 2 * osc.P) == eval_index(osc, j)

    @given(n=st.integers(min_value=-10**6, max_value=10**6),
           C=st.integers(min_value=2, max_value=16))
    @settings(max_examples=60)
    def test_arg_antiperiod_any_C(self, n, C):
        # in its own argument the antiperiod is C, for every C
        osc = generate(b"secret", b"\x00" * 32, "phi", 5, C, M257)
        x = EvalPoint(n, 5, M257)
        assert eval_arg(osc, x + C) == -eval_arg(osc, x)

    @given(n=st.integers(min_value=-10**6, max_value=10**6))
    def test_eval_at_unit_antiperiod(self, n):
        # composed with the C*t argument map, one whole t-step flips sign
        osc = walkthrough_osc()
        t = EvalPoint(n, 4, M257)
        assert eval_at(osc, t + 1, 2) == -eval_at(osc, t, 2)

    def test_grid_mismatch_rejected(self):
        osc = walkthrough_osc()
        with pytest.raises(ValueError):
            eval_arg(osc, EvalPoint(1, 5, M257))
        with pytest.raises(ValueError):
            eval_at(osc, EvalPoint(1, 4, M257), 3)


class TestModeEquivalence:
    def test_prf_equals_its_table(self):
        prf = PrfOscillator(b"\x07" * 32, 6, 5, M257)
        tab = prf.as_table()
        for j in range(-2 * prf.P, 2 * prf.P):
            assert eval_index(prf, j) == eval_index(tab, j)

    def test_generate_picks_table_when_small(self):
        small = generate(b"s", b"\x01" * 32, "phi", 8, 8, M257)
        assert isinstance(small, TableOscillator)
        big = generate(b"s", b"\x01" * 32, "phi", 257, 256, M257)
        assert isinstance(big, PrfOscillator)
        assert big.P > TABLE_AUTO_CAP

    def test_phi_psi_streams_differ(self):
        phi = generate(b"s", b"\x02" * 32, "phi", 8, 4, M257)
        psi = generate(b"s", b"\x02" * 32, "psi", 8, 4, M257)
        assert any(eval_index(phi, j) != eval_index(psi, j)
                   for j in range(phi.P))

    def test_bad_label(self):
        with pytest.raises(ValueError):
            generate(b"s", b"\x00" * 32, "chi", 4, 2, M257)

    def test_generate_is_deterministic(self):
        a = generate(b"s", b"\x03" * 32, "phi", 9, 3, M257)
        b = generate(b"s", b"\x03" * 32, "phi", 9, 3, M257)
        assert [eval_index(a, j) for j in range(a.P)] \
            == [eval_index(b, j) for j in range(b.P)]


class TestSeedIO:
    def test_roundtrip(self):
        osc = walkthrough_osc()
        back = import_seed(export_seed(osc), 4, 2, M257)
        for j in range(osc.P):
            assert eval_index(back, j) == eval_index(osc, j)

    def test_random_roundtrip(self):
        rng = random.Random(5)
        values = tuple(rng.randrange(257) for _ in range(12))
        osc = TableOscillator(OscSeed(values, 4, 3), M257)
        back = import_seed(export_seed(osc), 4, 3, M257)
        assert [eval_index(back, j) for j in range(12)] \
            == [eval_index(osc, j) for j in range(12)]

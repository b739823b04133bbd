"""Security-game harness: forgery games, adversaries, and brute-force oracles.

The game mirrors the protocol's information asymmetry. A fresh honest
transcript is produced; the adversary sees exactly the public fields
(s1, s3, u, z, h_check) and outputs a forgery (s*, delta*). The forgery
wins iff delta* avoids the two honest offsets AND substituting s* for s3
in the receiver's recovery yields a v* whose check hash matches the
transcript. The adjudicator holds the hidden state (it created the game);
the adversary callback never receives it.

Also here: exhaustive uniqueness sweeps (only s* = s3 recovers the honest
v at toy scale) and the bounded-reuse splice experiment (cross-transcript
s1/s3 swaps with replayed hashes are all rejected).
"""

from collections import Counter
from dataclasses import dataclass
import math
import random

from .errors import ProtocolAbort, SingularDenominator, VerificationError
from .genfunc import s_M
from .invariant import recover_v
from .modmath import FieldElem
from .protocol import (Message, Profile, Session, alice_generate,
                       bob_verify, compute_check, derive_session)

_CHECK_V_BOUND = 1 << 64  # v* beyond this cannot enter the check hash


@dataclass(frozen=True)
class AdversaryView:
    """Exactly the public fields; nothing else crosses the interface."""

    s1: int
    s3: int
    u: int
    z: bytes
    h_check: bytes
    M: int


@dataclass(frozen=True)
class Forgery:
    s_star: int
    delta_star: int


@dataclass(frozen=True)
class _Hidden:
    S: bytes
    session: Session
    v: int
    s0: FieldElem
    s2: FieldElem


@dataclass(frozen=True)
class GameInstance:
    profile: Profile
    transcript: Message
    hidden: _Hidden
    aborts: int  # redraws consumed before an honest transcript appeared

    def view(self) -> AdversaryView:
        m = self.transcript
        return AdversaryView(m.s1.value, m.s3.value, m.u, m.z, m.h_check,
                             self.profile.mod.M)


def new_game(profile: Profile, rng: random.Random) -> GameInstance:
    """Draw (S, z, u, v), redraw on aborts, seal the hidden state."""
    aborts = 0
    while True:
        S = rng.randbytes(32)
        z = rng.randbytes(32)
        u = rng.randrange(1, profile.u_bound)
        v = rng.randrange(0, profile.v_bound)
        try:
            sess = derive_session(S, z, profile)
            msg = alice_generate(sess, u, v)
        except ProtocolAbort:
            aborts += 1
            continue
        s0 = s_M(sess.gen_numer, sess.t)
        s2 = s_M(sess.gen_denom, sess.t + 2 * u)
        hidden = _Hidden(S, sess, v, s0, s2)
        return GameInstance(profile, msg, hidden, aborts)


def adjudicate(game: GameInstance, forgery: Forgery) -> bool:
    """Winning condition, checked with the hidden state."""
    hid = game.hidden
    msg = game.transcript
    u, v = msg.u, hid.v
    if forgery.delta_star in (2 * v + 1, 2 * u + 2 * v + 1):
        return False
    mod = game.profile.mod
    s_star = FieldElem(forgery.s_star, mod)
    try:
        v_star = recover_v(hid.s0, msg.s1, hid.s2, s_star,
                           hid.session.t.img, u, hid.session.p, mod)
    except SingularDenominator:
        return False
    if v_star.value >= _CHECK_V_BOUND:
        return False
    expected = compute_check(hid.S, v_star.value, msg.s1, s_star, u, msg.z)
    return expected == msg.h_check


def random_adversary(view: AdversaryView, rng: random.Random) -> Forgery:
    """Uniform s* in Z_M, uniform small offset."""
    return Forgery(rng.randrange(view.M), rng.randrange(1 << 16))


def wilson_interval(wins: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """95% score interval for a binomial proportion."""
    if trials == 0:
        return (0.0, 0.0)
    phat = wins / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials
                         + z * z / (4 * trials * trials)) / denom
    # at the degenerate edges the bound is exactly 0 or 1; don't let
    # rounding in the quotient pull it a ulp inside
    lo = 0.0 if wins == 0 else max(0.0, center - half)
    hi = 1.0 if wins == trials else min(1.0, center + half)
    return (lo, hi)


@dataclass(frozen=True)
class AdvantageReport:
    game_id: str
    adversary: str
    trials: int
    wins: int
    ci_low: float
    ci_high: float
    aborts: int

    @property
    def advantage(self) -> float:
        return self.wins / self.trials if self.trials else 0.0


def run_random_adversary(profile: Profile, trials: int,
                         seed: int = 0) -> AdvantageReport:
    """Monte Carlo advantage of the uniform-forgery adversary."""
    if trials < 100:
        raise ValueError("trials must be >= 100")
    rng = random.Random(seed)
    wins = 0
    aborts = 0
    for _ in range(trials):
        game = new_game(profile, rng)
        aborts += game.aborts
        forgery = random_adversary(game.view(), rng)
        if adjudicate(game, forgery):
            wins += 1
    lo, hi = wilson_interval(wins, trials)
    return AdvantageReport(f"random-{profile.name}-{seed}", "random",
                           trials, wins, lo, hi, aborts)


def emit_csv(reports) -> str:
    lines = ["game_id,adversary,trials,wins,ci_low,ci_high"]
    for r in reports:
        lines.append(f"{r.game_id},{r.adversary},{r.trials},{r.wins},"
                     f"{r.ci_low:.6f},{r.ci_high:.6f}")
    return "\n".join(lines) + "\n"


def lemma1_exhaustive(game: GameInstance) -> tuple[int, list[int]]:
    """Count s* in Z_M whose recovery returns the honest v.

    Exhaustive, so only meaningful at desk scale. For every valid game
    the count is 1 and the witness is the honest s3.
    """
    mod = game.profile.mod
    if mod.M > 1 << 16:
        raise ValueError("exhaustive sweep needs M <= 2^16")
    hid = game.hidden
    msg = game.transcript
    witnesses = []
    for cand in range(mod.M):
        s_star = FieldElem(cand, mod)
        try:
            v_star = recover_v(hid.s0, msg.s1, hid.s2, s_star,
                               hid.session.t.img, msg.u, hid.session.p, mod)
        except SingularDenominator:
            continue
        if v_star.value == hid.v:
            witnesses.append(cand)
    return len(witnesses), witnesses


def matching_count(V: int, m: int) -> int:
    """Number of injective assignments of m slots into V transcripts."""
    return math.perm(V, m)


@dataclass(frozen=True)
class ReuseReport:
    V: int
    splices: int
    accepted: int
    rejected_by: dict


def lemma2_reuse_experiment(profile: Profile, V_max: int,
                            seed: int = 0) -> ReuseReport:
    """Bounded-reuse splice experiment at a fixed (S, z, u).

    Emits V_max transcripts with distinct v, then tries every ordered
    cross-transcript splice (s1 from one, s3 from another) replaying the
    check hash from either side. All splices must be rejected.
    """
    if not 1 <= V_max <= 1000:
        raise ValueError("V_max must be in [1, 1000]")
    rng = random.Random(seed)
    v_pool = rng.sample(range(profile.v_bound), V_max)
    while True:
        S = rng.randbytes(32)
        z = rng.randbytes(32)
        u = rng.randrange(1, profile.u_bound)
        try:
            sess = derive_session(S, z, profile)
            msgs = [alice_generate(sess, u, v) for v in v_pool]
            break
        except ProtocolAbort:
            continue

    accepted = 0
    rejected = Counter()
    splices = 0
    for a, donor_a in enumerate(msgs):
        for b, donor_b in enumerate(msgs):
            if a == b:
                continue
            for h_check in (donor_a.h_check, donor_b.h_check):
                spliced = Message(donor_a.s1, donor_b.s3, u, z, h_check)
                splices += 1
                try:
                    bob_verify(S, spliced, profile)
                    accepted += 1
                except VerificationError as exc:
                    rejected[type(exc).__name__] += 1
    return ReuseReport(V_max, splices, accepted, dict(rejected))

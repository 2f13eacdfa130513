"""Greedy unicast rounds for the users the coded step excludes."""

import random

from ccsched import MiniFileId, SubpacketId, schedule_uc


def subs(user, n):
    return [SubpacketId(MiniFileId(user, (1,)), q) for q in range(1, n + 1)]


def test_single_user_gets_one_subpacket_per_round():
    rounds = schedule_uc({5: subs(5, 6)}, alpha=6)
    assert len(rounds) == 6
    assert all(len(r.entries) == 1 and r.entries[0][0] == 5 for r in rounds)
    delivered = [r.entries[0][1] for r in rounds]
    assert delivered == subs(5, 6)


def test_no_missing_users_means_no_rounds():
    assert schedule_uc({}, alpha=4) == ()
    assert schedule_uc({3: []}, alpha=4) == ()


def test_four_users_three_each_alpha_two():
    missing = {k: subs(k, 3) for k in (1, 2, 3, 4)}
    rounds = schedule_uc(missing, alpha=2)
    assert len(rounds) == 6   # 12 subpackets, 2 per round
    assert [tuple(k for k, _ in r.entries) for r in rounds] == \
           [(1, 2), (3, 4), (1, 2), (3, 4), (1, 2), (3, 4)]


def test_round_count_matches_ceiling_for_equal_loads():
    rng = random.Random(5)
    for _ in range(60):
        K_U = rng.randint(1, 8)
        load = rng.randint(1, 12)
        alpha = rng.randint(1, 8)
        missing = {k: subs(k, load) for k in range(1, K_U + 1)}
        rounds = schedule_uc(missing, alpha)
        total = K_U * load
        assert sum(len(r.entries) for r in rounds) == total
        assert len(rounds) == -(-total // min(K_U, alpha))
        for r in rounds:
            assert len(r.entries) <= alpha
            recipients = [k for k, _ in r.entries]
            assert len(set(recipients)) == len(recipients)


def test_each_user_receives_its_list_in_order():
    missing = {1: subs(1, 4), 2: subs(2, 2)}
    rounds = schedule_uc(missing, alpha=2)
    per_user = {1: [], 2: []}
    for r in rounds:
        for k, sub in r.entries:
            per_user[k].append(sub)
    assert per_user[1] == subs(1, 4)
    assert per_user[2] == subs(2, 2)

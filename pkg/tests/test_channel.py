from __future__ import annotations

import io
from collections import Counter

import numpy as np
import pytest

from gabinterp.channel import (ErasureInfo, qsc_rank_channel, read_erasures, sample_erasure_scenario,
                               sample_rank_error, trial_rng, write_erasures)
from gabinterp.codes import InterleavedCode, rank_distance, word_sub, zero_word
from gabinterp.ffield import Field, rank_mod_q, rank_over_base

F128 = Field(2, 7)
EX3 = InterleavedCode.build(F128, 2, 7, (2, 2))


def test_rank_zero_is_zero_word():
    assert sample_rank_error(F128, 2, 7, 0, trial_rng(0, 0)) == [[0] * 7, [0] * 7]


def test_sampled_rank_is_exact():
    for idx in range(2000):
        rng = trial_rng(11, idx)
        t = idx % 8
        assert rank_over_base(F128, sample_rank_error(F128, 2, 7, t, rng)) == t


def test_rank_one_uniformity():
    f = Field(2, 2)
    rng = np.random.default_rng(2024)
    counts = Counter(tuple(sample_rank_error(f, 1, 2, 1, rng)[0]) for _ in range(100_000))
    # rank-1 2x2 binary matrices: 9 of them
    assert len(counts) == 9
    expected = 100_000 / 9
    assert max(abs(c - expected) / expected for c in counts.values()) < 0.05


def test_streams_are_deterministic_and_distinct():
    a = sample_rank_error(F128, 2, 7, 3, trial_rng(5, 9))
    b = sample_rank_error(F128, 2, 7, 3, trial_rng(5, 9))
    c = sample_rank_error(F128, 2, 7, 3, trial_rng(5, 10))
    assert a == b and a != c


def test_qsc_extremes_and_mean():
    rng = np.random.default_rng(0)
    assert all(qsc_rank_channel(F128, 2, 7, 0.0, rng)[1] == 0 for _ in range(50))
    assert all(qsc_rank_channel(F128, 2, 7, 1.0, rng)[1] == 7 for _ in range(50))
    f = Field(2, 3)
    ts = [qsc_rank_channel(f, 1, 3, 0.3, rng)[1] for _ in range(100_000)]
    se = np.sqrt(3 * 0.3 * 0.7 / len(ts))
    assert abs(np.mean(ts) - 0.9) < 3 * se
    with pytest.raises(ValueError):
        qsc_rank_channel(F128, 2, 7, 1.5, rng)


def test_erasure_scenario_without_erasures_matches_rank_sampler():
    draw = sample_erasure_scenario(EX3, (0, 0), 0, 3, trial_rng(1, 2))
    assert draw.error == sample_rank_error(F128, 2, 7, 3, trial_rng(1, 2))
    assert draw.erasures == ErasureInfo.empty(2)


def test_erasure_scenario_shapes_and_subadditivity():
    for idx in range(1000):
        rng = trial_rng(2, idx)
        rho, gamma, t = (idx % 2, 1), idx % 3, idx % 3
        draw = sample_erasure_scenario(EX3, rho, gamma, t, rng)
        info = draw.erasures
        assert info.rho == rho and info.gamma == gamma
        assert all(rank_over_base(F128, [list(a)]) == len(a) for a in info.a_row)
        assert rank_mod_q(info.b_col, 2) == gamma
        assert rank_over_base(F128, draw.full_error) == t
        assert rank_distance(F128, draw.error, zero_word(EX3)) <= t + sum(rho) + gamma
        rest = word_sub(F128, draw.error, draw.full_error)
        assert rank_over_base(F128, rest) <= sum(rho) + gamma


def test_erasure_file_roundtrip():
    draw = sample_erasure_scenario(EX3, (1, 2), 2, 1, trial_rng(3, 0))
    buf = io.StringIO()
    write_erasures(buf, draw.erasures)
    assert buf.getvalue().splitlines()[0] == "2 2 1 2"
    buf.seek(0)
    assert read_erasures(buf, F128, 7) == draw.erasures


def test_erasure_file_rejects_rank_deficient_columns():
    text = "1 2 0\n1 0 0 0 0 0 0\n1 0 0 0 0 0 0\n\n"
    with pytest.raises(ValueError):
        read_erasures(io.StringIO(text), F128, 7)

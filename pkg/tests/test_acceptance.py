"""Acceptance suite: one test per criterion, each reported as a PASS/FAIL line."""

import csv
import io
import random
import time
from collections import Counter

import numpy as np
import pytest

import published
from helpers import RATE, all_vote_tuples, make_script, median_star_oracle, silence, three_bursts, tone
from polarity_ensemble.classify import classify_all, default_config, realtime_label
from polarity_ensemble.cli import main
from polarity_ensemble.core import POLARITIES, Polarity, Statement, format_percent, round_half_up
from polarity_ensemble.ensemble import majority_vote, median_star
from polarity_ensemble.ingest import AudioClip, RESULT_HEADER, read_results, write_wav
from polarity_ensemble.ingest.audio import VadConfig, segment_audio
from polarity_ensemble.metrics import (
    ConfusionMatrix,
    accuracy_and_split,
    cohen_kappa,
    confusion,
    fleiss_kappa,
    prf,
    ratings_from_labels,
    venn3,
)

NEG, NEU, POS = POLARITIES
FRAME = VadConfig().frame_len


@pytest.fixture
def criterion(request, record_property):
    # the name is recorded up front so a crashing test still reports FAIL
    name = request.node.get_closest_marker("criterion").args[0]
    record_property("criterion", name)

    def report(detail):
        record_property("detail", detail)
    return report


@pytest.mark.criterion("1 Median* oracle")
def test_c01_median_star_exhaustive(criterion):
    t0 = time.perf_counter()
    mismatches = [v for v in all_vote_tuples()
                  if median_star([Polarity(x) for x in v]).value != median_star_oracle(v)]
    explicit = {
        (POS, POS, POS, NEU): POS,
        (NEG, NEG, NEG, POS): NEG,
        (POS, POS, NEU, NEU): NEU,
        (NEG, NEG, NEU, NEU): NEU,
        (NEG, NEG, POS, POS): NEU,
    }
    wrong = {k: median_star(k) for k, want in explicit.items() if median_star(k) != want}
    elapsed = time.perf_counter() - t0
    criterion(f"81 tuples, {len(mismatches)} mismatches, {elapsed * 1000:.1f} ms")
    assert len(all_vote_tuples()) == 81
    assert not mismatches and not wrong
    assert elapsed < 1.0


@pytest.mark.criterion("2 Majority-vote contrast")
def test_c02_majority_vote_contrast(criterion):
    votes = (NEG, NEG, POS, POS)
    draws = Counter(majority_vote(votes, seed) for seed in range(10_000))
    neg, pos = draws[NEG] / 10_000, draws[POS] / 10_000
    criterion(
              f"neutral {draws[NEU]}, negative {neg:.2%}, positive {pos:.2%}; Median* {median_star(votes).value}")
    assert draws[NEU] == 0
    assert abs(neg - 0.5) <= 0.02 and abs(pos - 0.5) <= 0.02
    assert median_star(votes) is NEU


@pytest.mark.criterion("3 Agreement split shares")
def test_c03_split_shares(criterion):
    lines = []
    for name, (counts, shares) in published.SPLITS.items():
        m, mild, severe = counts
        n = sum(counts)
        gold = [POS] * m + [NEU] * mild + [NEG] * severe
        pred = [POS] * n
        split = accuracy_and_split(gold, pred)
        got = (split.matches / n * 100, split.mild / n * 100, split.severe / n * 100)
        assert (split.matches, split.mild, split.severe) == counts
        for g, want in zip(got, shares):
            assert abs(g - want) <= 0.05 + 1e-9, (name, got, shares)
        printed = tuple(format_percent(c / n) for c in counts)
        assert printed == tuple(f"{s:.1f}%" for s in shares)
        lines.append(f"{name} " + "/".join(printed))
    criterion("; ".join(lines))


@pytest.mark.criterion("4 Author-SA confusion block")
def test_c04_author_sa_block(criterion):
    cm = ConfusionMatrix(published.AUTHOR_SA_CELLS)
    scores = prf(cm)
    want = published.PRF_TABLE[("author", "sa")]
    worst = 0.0
    for cls in (POS, NEU, NEG):
        s = scores.per_class[cls]
        for got, exp in zip((s.precision, s.recall, s.f1), want[cls.value]):
            worst = max(worst, abs(got - exp))
    for got, exp in zip((scores.macro.precision, scores.macro.recall, scores.macro.f1), want["macro"]):
        worst = max(worst, abs(got - exp))
    worst = max(worst, abs(scores.micro_f1 - want["micro_f1"]))
    criterion(
              f"max deviation {worst:.4f}, micro F1 {scores.micro_f1:.4f} (62/96), kappa {cohen_kappa(cm):.4f}")
    assert worst <= 0.001 + 1e-12
    assert scores.micro_f1 == pytest.approx(62 / 96, abs=1e-12)
    assert cm.diagonal == 62 and cm.n == 96


@pytest.mark.criterion("5 Three-rater partition")
def test_c05_three_rater_fixture(criterion, fixtures_dir):
    with (fixtures_dir / "three_raters.csv").open(encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    a, h, s = ([Polarity(r[k]) for r in rows] for k in ("author", "human", "sa"))
    part = venn3(a, h, s)
    pairs = {
        "author-human": confusion(a, h).diagonal,
        "author-sa": confusion(a, s).diagonal,
        "human-sa": confusion(h, s).diagonal,
    }
    criterion(
              f"partition {part.all_three}/{part.only_ab}/{part.only_ac}/{part.only_bc}/{part.none_agree}, "
              f"pairs {list(pairs.values())}, at least two {part.at_least_two}")
    assert len(rows) == 96
    assert (part.all_three, part.only_ab, part.only_ac, part.only_bc, part.none_agree) == published.VENN
    assert list(pairs.values()) == [60, 62, 61]
    assert part.at_least_two == published.AT_LEAST_TWO
    assert part.pair_matches() == {"ab": 60, "ac": 62, "bc": 61}
    assert part.total == 96


@pytest.mark.criterion("6 Kappa correctness")
def test_c06_kappa(criterion):
    cohen = cohen_kappa(ConfusionMatrix([[20, 5, 0], [10, 15, 0], [0, 0, 0]]))
    fleiss = fleiss_kappa(ratings_from_labels([(NEU, NEU), (POS, NEG)]))
    rng = np.random.default_rng(7)
    g = [POLARITIES[i] for i in rng.integers(0, 3, 20_000)]
    p = [POLARITIES[i] for i in rng.integers(0, 3, 20_000)]
    random_k = cohen_kappa(confusion(g, p))
    random_f = fleiss_kappa(ratings_from_labels(list(zip(g, p))))
    perfect = cohen_kappa(confusion(g, g))
    criterion(
              f"Cohen {cohen:.9f}, Fleiss {fleiss:.9f}, random {random_k:+.4f}/{random_f:+.4f}, perfect {perfect}")
    assert cohen == pytest.approx(0.4, abs=1e-9)
    assert fleiss == pytest.approx(0.2, abs=1e-9)
    assert abs(random_k) <= 0.05 and abs(random_f) <= 0.05
    assert perfect == 1.0


@pytest.mark.criterion("7 Example sentences")
def test_c07_example_sentences(criterion):
    cfg = default_config()
    cases = {
        "I am very happy.": POS,
        "I am unhappy.": NEG,
        "This is a neutral statement.": NEU,
    }
    got = {}
    for i, (text, want) in enumerate(cases.items()):
        st = Statement(i, text)
        got[text] = (realtime_label(st, cfg), median_star(classify_all(st, cfg).labels))
    criterion(
              "; ".join(f"{t!r} -> {r.value}/{c.value}" for t, (r, c) in got.items()))
    for text, want in cases.items():
        assert got[text] == (want, want)


def _burst_clip(amplitudes, gap=0.4):
    parts = [silence(0.2)]
    for amp in amplitudes:
        parts += [tone(0.3, amp), silence(gap)]
    return AudioClip(np.concatenate(parts))


@pytest.mark.criterion("8 VAD properties")
def test_c08_vad(criterion):
    samples, bounds = three_bursts()
    segs = segment_audio(AudioClip(samples))
    assert len(segs) == 3
    for seg, (lo, hi) in zip(segs, bounds):
        assert abs(seg.start_sample - lo) <= 2 * FRAME
        assert abs(seg.end_sample - hi) <= 2 * FRAME
    silent = segment_audio(AudioClip(silence(3.0)))
    steady = segment_audio(AudioClip(tone(3.0, 0.5)))
    assert silent == [] and len(steady) == 1

    fixture_set = [(0.01,), (0.015, 0.05), (0.02, 0.01, 0.03), (0.025, 0.04, 0.005, 0.08)]
    violations = 0
    for amps in fixture_set:
        before = len(segment_audio(_burst_clip(amps)))
        for gain in (1.5, 2.0, 4.0, 10.0):
            if len(segment_audio(_burst_clip([a * gain for a in amps]))) < before:
                violations += 1
    criterion(
              f"3 bursts -> {len(segs)} segments, silence -> {len(silent)}, tone -> {len(steady)}, "
              f"gain violations {violations}")
    assert violations == 0


@pytest.mark.criterion("9 End-to-end CLI")
def test_c09_cli_end_to_end(criterion, tmp_path, fixtures_dir):
    out_text = tmp_path / "text.csv"
    t0 = time.perf_counter()
    code_text = main(["analyze-text", "--input", str(fixtures_dir / "six_statements.csv"), "--out", str(out_text)],
                     stdout=io.StringIO(), stderr=io.StringIO())
    text_time = time.perf_counter() - t0

    wav = tmp_path / "bursts.wav"
    write_wav(AudioClip(three_bursts()[0]), wav)
    asr = make_script(tmp_path, "asr.py", 'print("i am very hapy")\n')
    out_audio = tmp_path / "audio.csv"
    t0 = time.perf_counter()
    code_audio = main(["analyze-audio", "--wav", str(wav), "--transcriber", asr, "--out", str(out_audio)],
                      stdout=io.StringIO(), stderr=io.StringIO())
    audio_time = time.perf_counter() - t0

    text_rows = read_results(out_text)
    audio_rows = read_results(out_audio)
    criterion(
              f"analyze-text {len(text_rows)} rows in {text_time:.2f} s, "
              f"analyze-audio {len(audio_rows)} statements in {audio_time:.2f} s")
    assert code_text == 0 and code_audio == 0
    with out_text.open(newline="", encoding="utf-8") as fh:
        raw = list(csv.reader(fh))
    assert tuple(raw[0]) == RESULT_HEADER and len(raw) == 7
    for row in raw[1:]:
        assert row[6] == median_star_oracle(row[2:6])
    assert [r.statement.text for r in text_rows] == [r[1] for r in raw[1:]]
    assert len(audio_rows) == 3
    assert all(r.combined is POS for r in audio_rows)
    assert text_time < 5 and audio_time < 5


@pytest.mark.criterion("10 Invariant fuzz")
def test_c10_invariant_fuzz(criterion):
    rng = random.Random(2024)
    violations = Counter()
    for _ in range(10_000):
        n = rng.randint(1, 40)
        gold = [rng.choice(POLARITIES) for _ in range(n)]
        pred = [rng.choice(POLARITIES) for _ in range(n)]
        split = accuracy_and_split(gold, pred)
        if split.matches + split.mild + split.severe != n:
            violations["split"] += 1
        cm = confusion(gold, pred)
        if abs(prf(cm).micro_f1 - split.accuracy) > 1e-12:
            violations["micro"] += 1
        if cohen_kappa(cm) > 1 + 1e-12:
            violations["kappa"] += 1
        votes = [rng.choice(POLARITIES) for _ in range(4)]
        shuffled = votes[:]
        rng.shuffle(shuffled)
        if median_star(votes) != median_star(shuffled):
            violations["permutation"] += 1
        # raising one vote never lowers the combined label
        i = rng.randrange(4)
        raised = votes[:]
        raised[i] = Polarity.from_rank(min(1, votes[i].rank + 1))
        if median_star(raised) < median_star(votes):
            violations["monotonic"] += 1
    criterion(f"10000 vectors, violations {dict(violations) or 0}")
    assert not violations

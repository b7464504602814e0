import itertools
import json

import pytest

from lookandsay import (
    DatasetPair,
    DatasetSpec,
    Manifest,
    check_dataset,
    count_capped,
    count_strings,
    generate_dataset,
    make_pairs,
    sample_capped,
    say,
    unsay,
    write_dataset,
)
from lookandsay.datagen import REVERSED, SPACED_TSV
from lookandsay.errors import FormatError, LnsError, UniverseExhausted

from conftest import brute_capped_universe


# --- counting --------------------------------------------------------------


@pytest.mark.parametrize(
    "length,expected",
    [(10, 59_049), (15, 14_348_907), (17, 129_140_163), (20, 3_486_784_401), (0, 1)],
)
def test_count_strings(length, expected):
    assert count_strings(3, length) == expected


def test_count_capped_small_values():
    assert count_capped(3, 1, 3) == 3
    assert count_capped(3, 4, 3) == 78  # 3^4 minus the four-in-a-row triples


def test_count_capped_matches_enumeration():
    for length in range(1, 11):
        brute = sum(
            1
            for tup in itertools.product("123", repeat=length)
            if all(len(list(g)) <= 3 for _, g in itertools.groupby(tup))
        )
        assert count_capped(3, length, 3) == brute


def test_count_capped_degenerate_alphabet():
    assert count_capped(1, 3, 3) == 1
    assert count_capped(1, 4, 3) == 0


# --- sampling --------------------------------------------------------------


def test_sampling_is_deterministic():
    spec = DatasetSpec(train_size=200, test_size=50, max_len=10, seed=42)
    assert list(sample_capped(spec)) == list(sample_capped(spec))


def test_sampling_respects_domain():
    spec = DatasetSpec(train_size=500, test_size=0, min_len=2, max_len=9, seed=3)
    out = list(sample_capped(spec))
    assert len(out) == len(set(out)) == 500
    for s in out:
        assert 2 <= len(s) <= 9
        assert set(s) <= set("123")
        assert all(len(list(g)) <= 3 for _, g in itertools.groupby(s))


def test_sampling_exhausts_tiny_universe():
    spec = DatasetSpec(max_len=4, train_size=100, test_size=17, seed=7)
    emitted = list(sample_capped(spec))
    assert len(emitted) == 117  # 3 + 9 + 27 + 78
    assert set(emitted) == brute_capped_universe("123", 4)


def test_sampling_rejects_impossible_request():
    spec = DatasetSpec(max_len=2, train_size=100, test_size=0)
    with pytest.raises(UniverseExhausted):
        list(sample_capped(spec))


def test_spec_validation():
    with pytest.raises(ValueError):
        DatasetSpec(alphabet=(1, 1, 2), train_size=1).validate()
    with pytest.raises(ValueError):
        DatasetSpec(min_len=5, max_len=3).validate()
    with pytest.raises(ValueError):
        DatasetSpec(direction="sideways").validate()
    with pytest.raises(ValueError):
        DatasetSpec(alphabet=(0, 1)).validate()


# --- pairing ---------------------------------------------------------------


def test_make_pairs_forward():
    pairs = list(make_pairs(["21", "333"], "forward"))
    assert pairs == [DatasetPair("21", "1211"), DatasetPair("333", "33")]


def test_make_pairs_reversed():
    pairs = list(make_pairs(["21"], "reversed"))
    assert pairs == [DatasetPair("1211", "21")]
    assert unsay(pairs[0].source) == pairs[0].target


def test_alphabet_closed_under_rewrite():
    spec = DatasetSpec(train_size=300, test_size=0, seed=5)
    for pair in make_pairs(sample_capped(spec), "forward"):
        assert set(pair.target) <= set("123")


# --- writing and checking --------------------------------------------------


def test_write_dataset_layout(tmp_path):
    spec = DatasetSpec(train_size=9, test_size=3, max_len=2, seed=1)
    manifest = write_dataset(
        make_pairs(sample_capped(spec), spec.direction), spec, tmp_path
    )
    train = (tmp_path / "train.tsv").read_text().splitlines()
    test = (tmp_path / "test.tsv").read_text().splitlines()
    assert len(train) == 9 and len(test) == 3
    train_sources = {line.split("\t")[0] for line in train}
    test_sources = {line.split("\t")[0] for line in test}
    assert not train_sources & test_sources
    for line in train + test:
        source, target = line.split("\t")
        assert say(source) == target
    assert manifest.counts == {"train": 9, "test": 3}
    assert manifest.files["train.tsv"].lines == 9


def test_write_dataset_is_deterministic(tmp_path):
    spec = DatasetSpec(train_size=40, test_size=10, max_len=7, seed=99)
    m1 = generate_dataset(spec, tmp_path / "a")
    m2 = generate_dataset(spec, tmp_path / "b")
    assert m1.to_dict() == m2.to_dict()
    for name in ("train.tsv", "test.tsv", "manifest.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_spaced_format(tmp_path):
    spec = DatasetSpec(
        train_size=5, test_size=2, max_len=4, seed=2, format=SPACED_TSV
    )
    generate_dataset(spec, tmp_path)
    line = (tmp_path / "train.tsv").read_text().splitlines()[0]
    source, target = line.split("\t")
    assert say(source.replace(" ", "")) == target.replace(" ", "")
    assert all(c in "123 " for c in line.replace("\t", " "))
    assert check_dataset(tmp_path).ok


def test_reversed_dataset(tmp_path):
    spec = DatasetSpec(
        train_size=20, test_size=5, max_len=6, seed=8, direction=REVERSED
    )
    generate_dataset(spec, tmp_path)
    for line in (tmp_path / "train.tsv").read_text().splitlines():
        source, target = line.split("\t")
        assert say(target) == source
    assert check_dataset(tmp_path).ok


def test_write_dataset_short_stream(tmp_path):
    spec = DatasetSpec(train_size=9, test_size=3, max_len=2, seed=1)
    with pytest.raises(LnsError):
        write_dataset(
            [DatasetPair("1", "11")] * 5, spec, tmp_path
        )


def test_check_dataset_detects_tampering(tmp_path):
    spec = DatasetSpec(train_size=30, test_size=10, max_len=6, seed=4)
    generate_dataset(spec, tmp_path)
    assert check_dataset(tmp_path).ok

    train = tmp_path / "train.tsv"
    lines = train.read_text().splitlines()
    source, target = lines[3].split("\t")
    lines[3] = f"{source}\t{target[:-1]}{'1' if target[-1] != '1' else '2'}"
    train.write_text("\n".join(lines) + "\n")
    report = check_dataset(tmp_path)
    assert not report.ok
    assert any("checksum" in p for p in report.problems)
    assert any("violates" in p for p in report.problems)


def test_check_dataset_missing_manifest(tmp_path):
    with pytest.raises(FormatError):
        check_dataset(tmp_path)


def test_manifest_round_trip(tmp_path):
    spec = DatasetSpec(train_size=4, test_size=2, max_len=3, seed=6)
    manifest = generate_dataset(spec, tmp_path)
    loaded = Manifest.load(tmp_path / "manifest.json")
    assert loaded.to_dict() == manifest.to_dict()
    assert loaded.spec == spec


def test_spec_round_trip():
    spec = DatasetSpec(train_size=7, test_size=3, direction=REVERSED, seed=12)
    assert DatasetSpec.from_dict(json.loads(json.dumps(spec.to_dict()))) == spec
    with pytest.raises(FormatError):
        DatasetSpec.from_dict({"no_such_field": 1})

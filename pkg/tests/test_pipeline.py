import json

import pytest

from sextica.bundles import spec_validate
from sextica.errors import SexticaError
from sextica.pipeline import (
    PRESETS,
    Certificate,
    load_certificate,
    load_sample,
    multi_prime,
    report_markdown,
    run_family,
    save_run,
    verify_certificate,
)


def test_presets_valid():
    assert {n: p.expected_nodes for n, p in PRESETS.items()} == {"Z31": 31, "Z32": 32, "Z35": 35, "Z40": 40, "A24": 24}
    for p in PRESETS.values():
        assert spec_validate(p.spec).accepted


def test_z32_seed_42(run):
    c = run("Z32", 42)
    assert (c.node_count, c.d_w, c.d_sing) == (32, 0, 0)
    assert c.t2_lower >= 1 and c.verdict == "obstructed"


def test_control_family_is_inconclusive(run):
    c = run("A24", 3)
    assert c.node_count == 24 and c.d_w >= 1 and c.verdict == "inconclusive"


def test_obstructed_shape(run):
    for name in ("Z31", "Z35", "Z40"):
        c = run(name, 3)
        assert c.verdict == "obstructed"
        assert c.d_sing == 0 and c.node_count == PRESETS[name].expected_nodes and c.sing_equals_w
        assert c.t2_lower == max(0, c.code_dim_lower - c.d_sing)


def test_determinism():
    a = run_family("Z32", 11)
    b = run_family("Z32", 11)
    assert a.dumps() == b.dumps()
    assert json.dumps(a.sample.to_json(), sort_keys=True) == json.dumps(b.sample.to_json(), sort_keys=True)


def test_degenerate_after_exhausted_retries(monkeypatch):
    import sextica.pipeline as pl
    from sextica.errors import DegenerateError

    def always_bad(*a, **k):
        raise DegenerateError("forced")

    monkeypatch.setattr(pl, "analyse", always_bad)
    c = pl.run_family("Z32", 1, max_attempts=3)
    assert c.verdict == "degenerate" and c.provenance["retries"] == 3
    assert all(a["status"] == "degenerate" for a in c.provenance["attempts"])


def test_multi_prime_agrees():
    r = multi_prime("Z32", 42)
    assert r.agree
    assert {tuple(c.key_values()) for c in r.certificates} == {(32, 0, 0)}


def test_multi_prime_flags_tiny_prime():
    assert not multi_prime("Z32", 42, [32003, 3]).agree


def test_multi_prime_needs_two_primes():
    with pytest.raises(SexticaError):
        multi_prime("Z32", 42, [32003])


def test_verify_round_trip(tmp_path, run):
    c = run("Z32", 42)
    cpath, spath = save_run(c, tmp_path)
    cert, sample = load_certificate(cpath), load_sample(spath)
    assert cert.dumps() == c.dumps()
    res = verify_certificate(cert, sample)
    assert res.ok and res.status == "verified"
    cert.node_count = 33
    res = verify_certificate(cert, sample)
    assert not res.ok and res.status == "mismatch" and "node_count" in res.mismatches


def test_verify_at_other_prime(run):
    c = run("Z32", 42)
    res = verify_certificate(c, c.sample, 65537)
    assert res.status == "different-prime" and res.ok


def test_verify_requires_sample(run):
    with pytest.raises(SexticaError):
        verify_certificate(run("Z32", 42), None)


def test_certificate_json_round_trip(run):
    c = run("Z31", 1)
    d = Certificate.from_json(json.loads(c.dumps()))
    assert d.dumps() == c.dumps()
    assert "timestamp" not in c.dumps()


def test_markdown_report(run):
    md = report_markdown([run("Z32", 42), run("A24", 3)])
    lines = md.strip().splitlines()
    assert len(lines) == 4 and "obstructed" in lines[2] and "inconclusive" in lines[3]

import math
import re
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hiddenspin.covariant_spin import Constants
from hiddenspin.dynamics import AccelerationChoice, Integrator, TrajectoryRecord, evolve, integrate
from hiddenspin.fields import FieldConfiguration
from hiddenspin.hamiltonian import TermMask
from hiddenspin.scenario_io import (
    CSV_COLUMNS,
    ConstraintError,
    NormalizationError,
    Scenario,
    ScenarioError,
    format_scenario,
    load_scenario,
    parse_scenario,
    parse_vector,
    read_trajectory_csv,
    read_trajectory_jsonl,
    write_trajectory,
)

FIXTURES = Path(__file__).parent / "fixtures"

VALID = sorted((FIXTURES / "valid").glob("*.scn"))
INVALID = sorted((FIXTURES / "invalid").glob("*.scn"))
EXPECT = re.compile(r"#\s*expect:\s*(\w+)\s+(\d+)")

MINIMAL = """\
[field]
family = uniform_static

[particle]
position = (0, 0, 0)

[integration]
t1 = 1
dt = 0.1
"""


def expectation(path):
    m = EXPECT.match(path.read_text(encoding="utf-8").splitlines()[0])
    assert m, f"{path.name} lacks an expect header"
    return m.group(1), int(m.group(2))


def test_corpus_size():
    assert len(VALID) >= 15
    assert len(INVALID) >= 10


@pytest.mark.parametrize("path", VALID, ids=lambda p: p.stem)
def test_valid_fixture_parses(path):
    sc = load_scenario(path)
    assert sc.t1 > sc.t0 and 0 < sc.dt <= sc.t1 - sc.t0
    assert abs(np.linalg.norm(sc.spin) - 1.0) < 1e-15


@pytest.mark.parametrize("path", INVALID, ids=lambda p: p.stem)
def test_invalid_fixture_reports_kind_and_line(path):
    kind, line = expectation(path)
    with pytest.raises(ScenarioError) as info:
        load_scenario(path)
    assert (info.value.kind, info.value.line) == (kind, line)


def test_minimal_defaults():
    sc = parse_scenario(MINIMAL)
    assert sc.constants == Constants(hbar=1.0, m=1.0, c=1.0, e=-1.0)
    assert sc.mask == TermMask()
    assert sc.acceleration is AccelerationChoice.TOTAL_FORCE
    assert (sc.t0, sc.sample_every, sc.r_min) == (0.0, 1, 1e-6)
    assert sc.momentum == (0.0, 0.0, 0.0) and sc.spin == (0.0, 0.0, 1.0)
    assert sc.field.E == (0.0, 0.0, 0.0) and sc.field.B == (0.0, 0.0, 0.0)
    assert sc.output_csv is None and sc.output_jsonl is None


def test_negative_dt_names_key_and_line():
    with pytest.raises(ConstraintError) as info:
        parse_scenario(MINIMAL.replace("dt = 0.1", "dt = -0.1"))
    assert info.value.key == "dt" and info.value.line == 9


def test_spin_norm_two_is_rejected():
    text = MINIMAL.replace("position = (0, 0, 0)", "position = (0, 0, 0)\nspin = (0, 0, 2)")
    with pytest.raises(NormalizationError) as info:
        parse_scenario(text)
    assert info.value.line == 6


def test_spin_near_unit_is_renormalized():
    text = MINIMAL.replace("position = (0, 0, 0)", "position = (0, 0, 0)\nspin = (0, 0, 1.0000005)")
    assert parse_scenario(text).spin == (0.0, 0.0, 1.0)
    with pytest.raises(NormalizationError):
        parse_scenario(text.replace("1.0000005", "1.000002"))


def test_parse_vector():
    assert parse_vector("(1, -2.5, 3e-1)") == (1.0, -2.5, 0.3)
    for bad in ("(1, 2)", "1, 2, 3", "(a, b, c)", "(1, 2, 3"):
        with pytest.raises(ScenarioError):
            parse_vector(bad)


@pytest.mark.parametrize("path", VALID, ids=lambda p: p.stem)
def test_canonical_form_is_idempotent_on_corpus(path):
    sc = load_scenario(path)
    text = format_scenario(sc)
    assert parse_scenario(text) == sc
    assert format_scenario(parse_scenario(text)) == text


floats = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
vectors = st.tuples(floats, floats, floats)


@st.composite
def scenarios(draw):
    family = draw(st.sampled_from(["uniform_static", "plane_wave_circular", "plane_wave_linear", "coulomb_potential"]))
    c = draw(st.floats(min_value=0.5, max_value=1e3))
    if family == "uniform_static":
        cfg = FieldConfiguration(family, E=draw(vectors), B=draw(vectors))
    elif family == "coulomb_potential":
        cfg = FieldConfiguration(family, Z=draw(floats))
    else:
        axis = draw(vectors.filter(lambda v: np.linalg.norm(v) > 1e-3))
        kw = {"helicity": draw(st.sampled_from([1, -1]))} if family == "plane_wave_circular" else {}
        cfg = FieldConfiguration(family, E0=draw(st.floats(min_value=1e-3, max_value=1e3)),
                                 omega=draw(st.floats(min_value=1e-3, max_value=1e3)), axis=axis, **kw)
    position = (draw(st.floats(1.0, 10.0)), 0.0, draw(floats))
    speed = draw(st.floats(min_value=0.0, max_value=0.9))
    spin = draw(vectors.filter(lambda v: np.linalg.norm(v) > 1e-3))
    spin = tuple(float(x) for x in np.asarray(spin) / np.linalg.norm(spin))
    t0 = draw(st.floats(min_value=-100, max_value=100))
    t1 = t0 + draw(st.floats(min_value=1e-3, max_value=100))
    mask = TermMask(**{n: draw(st.booleans()) for n in ("so", "h1", "h2", "dv", "zeeman")})
    text = format_scenario(Scenario(
        constants=Constants(hbar=1.0, m=1.0, c=c, e=-1.0), field=cfg, position=position,
        momentum=(speed * c, 0.0, 0.0), spin=spin, mask=mask,
        acceleration=draw(st.sampled_from(list(AccelerationChoice))),
        t0=t0, t1=t1, dt=(t1 - t0) / draw(st.integers(1, 1000)),
        sample_every=draw(st.integers(1, 50)), r_min=1e-6,
        output_csv=draw(st.sampled_from([None, "a.csv"])), output_jsonl=None))
    return text


@settings(max_examples=200, deadline=None)
@given(scenarios())
def test_parse_format_parse_is_idempotent(text):
    first = parse_scenario(text)
    assert parse_scenario(format_scenario(first)) == first


def _record(n_samples):
    integ = Integrator(FieldConfiguration("plane_wave_circular", E0=0.3, omega=1.1), Constants(),
                       TermMask.of("h1", "h2", "zeeman"))
    sc = parse_scenario(MINIMAL)
    rec = integrate(integ, sc.initial_state(), 1.0, 1.0 / 7, sample_every=1)
    rec.samples = rec.samples[:n_samples]
    return rec


def test_single_sample_gives_two_csv_lines():
    data = write_trajectory(_record(1), "csv")
    lines = data.decode().splitlines()
    assert len(lines) == 2
    assert lines[0] == "t,rx,ry,rz,px,py,pz,sx,sy,sz,h0,so,h1,h2,dv,zeeman,total"
    assert tuple(lines[0].split(",")) == CSV_COLUMNS


def test_csv_and_jsonl_round_trip_bit_exact():
    rec = _record(8)
    for rows in (read_trajectory_csv(write_trajectory(rec, "csv")),
                 read_trajectory_jsonl(write_trajectory(rec, "jsonl"))):
        assert len(rows) == len(rec.samples)
        for row, s in zip(rows, rec.samples):
            got = np.array([row[c] for c in ("rx", "ry", "rz", "px", "py", "pz", "sx", "sy", "sz")])
            want = np.concatenate([s.r, s.p, s.sigma])
            assert got.tobytes() == want.tobytes()
            assert row["t"] == s.t and row["total"] == s.terms.total and row["h1"] == s.terms.h1


@settings(max_examples=300)
@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=20))
def test_csv_float_encoding_round_trips(values):
    rec = _record(1)
    s = rec.samples[0]
    samples = [type(s)(t=v, r=np.array([v, -v, 0.0]), p=s.p, sigma=s.sigma, terms=s.terms) for v in values]
    rows = read_trajectory_csv(write_trajectory(TrajectoryRecord(samples=samples), "csv"))
    for row, v in zip(rows, values):
        assert row["t"] == v and math.copysign(1, row["ry"]) == math.copysign(1, -v)


def test_empty_record_is_rejected():
    with pytest.raises(ValueError):
        write_trajectory(TrajectoryRecord(), "csv")
    with pytest.raises(ValueError):
        write_trajectory(_record(1), "xml")


def test_golden_csv(tmp_path):
    sc = load_scenario(FIXTURES / "valid" / "single_step.scn")
    data = write_trajectory(evolve(sc), "csv")
    assert data == (FIXTURES / "golden" / "single_step.csv").read_bytes()


def test_unit_spin_is_kept_verbatim():
    spin = "(0.9472419388667153, 0.038370543138691954, 0.3182144099051269)"
    text = MINIMAL.replace("position = (0, 0, 0)", f"position = (0, 0, 0)\nspin = {spin}")
    sc = parse_scenario(text)
    assert sc.spin == (0.9472419388667153, 0.038370543138691954, 0.3182144099051269)
    assert parse_scenario(format_scenario(sc)) == sc

"""Scenario files and trajectory output.

A scenario is an INI-style UTF-8 text file::

    # cyclotron orbit in a uniform field
    [constants]          # optional; defaults hbar = m = c = 1, e = -1
    c = 1

    [field]
    family = uniform_static
    B = (0, 0, 1)

    [particle]
    position = (1, 0, 0)
    momentum = (0, 1, 0)   # kinetic momentum, default (0, 0, 0)
    spin = (0, 0, 1)       # Bloch vector, default (0, 0, 1)

    [terms]              # optional; every term defaults to false
    h1 = true
    acceleration = total_force   # or electric_only

    [integration]
    t0 = 0               # optional
    t1 = 10
    dt = 0.01
    sample_every = 10    # optional, default 1
    r_min = 1e-6         # optional

    [output]             # optional; paths relative to the scenario file
    csv = out.csv
    jsonl = out.jsonl

Keys are case-sensitive, vectors are written ``(a, b, c)`` and ``#`` starts
a comment.  Field keys depend on the family:

==================== ======================================================
coulomb_potential    ``Z`` (default 1)
uniform_static       ``E``, ``B`` (default zero vectors)
plane_wave_circular  ``E0``, ``omega`` (required), ``axis`` (default z),
plane_wave_linear    ``helicity`` (circular only, default +1)
==================== ======================================================

Every error is a :class:`ScenarioError` carrying a ``kind`` and a 1-based
``line``; errors about a missing key point at the section header (or at
the last line when the whole section is absent).
"""
from __future__ import annotations

import io
import json
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .covariant_spin import Constants
from .dynamics import AccelerationChoice, TrajectoryRecord
from .errors import ConfigurationError, HiddenSpinError
from .fields import FieldConfiguration
from .hamiltonian import TERM_NAMES, ParticleState, TermMask
from .mathcore import spinor_from_bloch

SPIN_RENORM_TOL = 1e-6
_UNIT_ULPS = 8 * np.finfo(float).eps


class ScenarioError(HiddenSpinError):
    kind = "error"

    def __init__(self, message: str, line: int, key: str | None = None):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.key = key
        self.detail = message


class ScenarioSyntaxError(ScenarioError):
    kind = "syntax"


class UnknownKeyError(ScenarioError):
    kind = "unknown"


class NonFiniteError(ScenarioError):
    kind = "non_finite"


class ConstraintError(ScenarioError):
    kind = "constraint"


class NormalizationError(ScenarioError):
    kind = "normalization"


class MissingKeyError(ScenarioError):
    kind = "missing"


class DuplicateKeyError(ScenarioError):
    kind = "duplicate"


ERROR_KINDS = {cls.kind: cls for cls in (ScenarioSyntaxError, UnknownKeyError, NonFiniteError,
                                         ConstraintError, NormalizationError, MissingKeyError,
                                         DuplicateKeyError)}


@dataclass(frozen=True)
class Scenario:
    constants: Constants
    field: FieldConfiguration
    position: tuple
    momentum: tuple
    spin: tuple
    mask: TermMask = TermMask()
    acceleration: AccelerationChoice = AccelerationChoice.TOTAL_FORCE
    t0: float = 0.0
    t1: float = 1.0
    dt: float = 0.01
    sample_every: int = 1
    r_min: float = 1e-6
    output_csv: str | None = None
    output_jsonl: str | None = None

    def initial_state(self) -> ParticleState:
        return ParticleState(np.array(self.position, dtype=float), np.array(self.momentum, dtype=float),
                             self.t0, spinor_from_bloch(self.spin))


# --- lexical layer ---------------------------------------------------------------

_NUMBER = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_NONFINITE = re.compile(r"[+-]?(nan|inf|infinity)", re.IGNORECASE)
_INTEGER = re.compile(r"[+-]?\d+")
_KEY = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass
class _Entry:
    value: str
    line: int


@dataclass
class _Section:
    line: int
    entries: dict = field(default_factory=dict)


def _lex(text: str) -> tuple[dict, int]:
    sections: dict[str, _Section] = {}
    current = None
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ScenarioSyntaxError(f"malformed section header {raw.strip()!r}", lineno)
            name = line[1:-1].strip()
            if name not in SECTIONS:
                raise UnknownKeyError(f"unknown section [{name}]", lineno, name)
            if name in sections:
                raise DuplicateKeyError(f"section [{name}] appears twice", lineno, name)
            current = name
            sections[name] = _Section(lineno)
            continue
        if "=" not in line:
            raise ScenarioSyntaxError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if not _KEY.fullmatch(key):
            raise ScenarioSyntaxError(f"invalid key {key!r}", lineno)
        if current is None:
            raise ScenarioSyntaxError(f"key {key!r} outside of any section", lineno, key)
        if not value:
            raise ScenarioSyntaxError(f"empty value for {key!r}", lineno, key)
        sec = sections[current]
        if key in sec.entries:
            raise DuplicateKeyError(f"duplicate key {key!r} in [{current}]", lineno, key)
        sec.entries[key] = _Entry(value, lineno)
    return sections, max(1, len(lines))


def _number(text: str, key: str, line: int) -> float:
    if _NONFINITE.fullmatch(text):
        raise NonFiniteError(f"{key} must be finite, got {text!r}", line, key)
    if not _NUMBER.fullmatch(text):
        raise ScenarioSyntaxError(f"{key}: expected a number, got {text!r}", line, key)
    val = float(text)
    if not math.isfinite(val):
        raise NonFiniteError(f"{key} overflows to {val!r}", line, key)
    return val


def _integer(text: str, key: str, line: int) -> int:
    if not _INTEGER.fullmatch(text):
        raise ScenarioSyntaxError(f"{key}: expected an integer, got {text!r}", line, key)
    return int(text)


def _vector(text: str, key: str, line: int) -> tuple:
    if not (text.startswith("(") and text.endswith(")")):
        raise ScenarioSyntaxError(f"{key}: expected a vector '(a, b, c)', got {text!r}", line, key)
    parts = [s.strip() for s in text[1:-1].split(",")]
    if len(parts) != 3:
        raise ScenarioSyntaxError(f"{key}: expected 3 components, got {len(parts)}", line, key)
    return tuple(_number(s, key, line) for s in parts)


def parse_vector(text: str) -> tuple:
    """Parse ``(a, b, c)``; raises :class:`ScenarioError` with line 1."""
    return _vector(text.strip(), "vector", 1)


def _boolean(text: str, key: str, line: int) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise ScenarioSyntaxError(f"{key}: expected true or false, got {text!r}", line, key)


def _string(text: str, key: str, line: int) -> str:
    return text


# section -> key -> converter
SECTIONS = {
    "constants": {"hbar": _number, "m": _number, "c": _number, "e": _number},
    "field": {"family": _string, "Z": _number, "E": _vector, "B": _vector, "E0": _number,
              "omega": _number, "axis": _vector, "helicity": _integer},
    "particle": {"position": _vector, "momentum": _vector, "spin": _vector},
    "terms": {**{n: _boolean for n in TERM_NAMES}, "acceleration": _string},
    "integration": {"t0": _number, "t1": _number, "dt": _number, "sample_every": _integer, "r_min": _number},
    "output": {"csv": _string, "jsonl": _string},
}

FAMILY_KEYS = {
    "coulomb_potential": {"Z"},
    "uniform_static": {"E", "B"},
    "plane_wave_circular": {"E0", "omega", "axis", "helicity"},
    "plane_wave_linear": {"E0", "omega", "axis"},
}
FAMILY_REQUIRED = {
    "coulomb_potential": set(),
    "uniform_static": set(),
    "plane_wave_circular": {"E0", "omega"},
    "plane_wave_linear": {"E0", "omega"},
}


class _Reader:
    """Typed access to lexed sections with line-aware errors."""

    def __init__(self, sections, last_line):
        self.sections = sections
        self.last_line = last_line
        for name, sec in sections.items():
            for key, entry in sec.entries.items():
                if key not in SECTIONS[name]:
                    raise UnknownKeyError(f"unknown key {key!r} in [{name}]", entry.line, key)

    def line_of(self, section, key=None) -> int:
        sec = self.sections.get(section)
        if sec is None:
            return self.last_line
        if key is not None and key in sec.entries:
            return sec.entries[key].line
        return sec.line

    def has(self, section, key) -> bool:
        return section in self.sections and key in self.sections[section].entries

    def get(self, section, key, default=None, required=False):
        if not self.has(section, key):
            if required:
                raise MissingKeyError(f"missing required key {key!r} in [{section}]",
                                      self.line_of(section), key)
            return default
        entry = self.sections[section].entries[key]
        return SECTIONS[section][key](entry.value, key, entry.line)


def _check(cond: bool, message: str, line: int, key: str):
    if not cond:
        raise ConstraintError(message, line, key)


def parse_scenario(text: str) -> Scenario:
    sections, last_line = _lex(text)
    rd = _Reader(sections, last_line)

    hbar = rd.get("constants", "hbar", 1.0)
    m = rd.get("constants", "m", 1.0)
    c = rd.get("constants", "c", 1.0)
    e = rd.get("constants", "e", -1.0)
    for key, val in (("hbar", hbar), ("m", m), ("c", c)):
        _check(val > 0, f"{key} must be > 0, got {val!r}", rd.line_of("constants", key), key)
    k = Constants(hbar=hbar, m=m, c=c, e=e)

    family = rd.get("field", "family", required=True)
    fline = rd.line_of("field", "family")
    if family not in FAMILY_KEYS:
        raise ConstraintError(f"unknown field family {family!r}", fline, "family")
    for key, entry in sections["field"].entries.items():
        if key != "family" and key not in FAMILY_KEYS[family]:
            raise UnknownKeyError(f"key {key!r} does not apply to family {family}", entry.line, key)
    for key in sorted(FAMILY_REQUIRED[family]):
        rd.get("field", key, required=True)
    params = {}
    for key in FAMILY_KEYS[family]:
        if rd.has("field", key):
            params[key] = rd.get("field", key)
    if family in ("plane_wave_circular", "plane_wave_linear"):
        _check(params["omega"] > 0, f"omega must be > 0, got {params['omega']!r}",
               rd.line_of("field", "omega"), "omega")
        _check(params["E0"] >= 0, f"E0 must be >= 0, got {params['E0']!r}", rd.line_of("field", "E0"), "E0")
        if "helicity" in params:
            _check(params["helicity"] in (1, -1), f"helicity must be +1 or -1, got {params['helicity']!r}",
                   rd.line_of("field", "helicity"), "helicity")
        if "axis" in params:
            _check(any(params["axis"]), "axis must be a nonzero vector", rd.line_of("field", "axis"), "axis")
    try:
        cfg = FieldConfiguration(family, **params)
    except ConfigurationError as exc:
        raise ConstraintError(str(exc), fline, "family") from exc

    position = rd.get("particle", "position", required=True)
    momentum = rd.get("particle", "momentum", (0.0, 0.0, 0.0))
    spin = rd.get("particle", "spin", (0.0, 0.0, 1.0))
    sline = rd.line_of("particle", "spin")
    snorm = math.sqrt(sum(x * x for x in spin))
    if abs(snorm - 1.0) > SPIN_RENORM_TOL:
        raise NormalizationError(f"spin Bloch vector has norm {snorm!r}; must be within "
                                 f"{SPIN_RENORM_TOL} of 1", sline, "spin")
    if abs(snorm - 1.0) > _UNIT_ULPS:
        # already-unit vectors are kept as written so that re-parsing canonical text is a no-op
        spin = tuple(x / snorm for x in spin)
    speed = math.sqrt(sum(x * x for x in momentum)) / m
    _check(speed < c, f"initial speed {speed!r} is not below c = {c!r}", rd.line_of("particle", "momentum"),
           "momentum")

    mask = TermMask(**{n: rd.get("terms", n, False) for n in TERM_NAMES})
    accel_text = rd.get("terms", "acceleration", AccelerationChoice.TOTAL_FORCE.value)
    try:
        accel = AccelerationChoice(accel_text)
    except ValueError:
        raise ConstraintError(f"acceleration must be total_force or electric_only, got {accel_text!r}",
                              rd.line_of("terms", "acceleration"), "acceleration") from None

    t0 = rd.get("integration", "t0", 0.0)
    t1 = rd.get("integration", "t1", required=True)
    dt = rd.get("integration", "dt", required=True)
    sample_every = rd.get("integration", "sample_every", 1)
    r_min = rd.get("integration", "r_min", 1e-6)
    _check(t1 > t0, f"t1 must exceed t0 ({t1!r} <= {t0!r})", rd.line_of("integration", "t1"), "t1")
    _check(dt > 0, f"dt must be > 0, got {dt!r}", rd.line_of("integration", "dt"), "dt")
    _check(dt <= t1 - t0, f"dt = {dt!r} exceeds t1 - t0 = {t1 - t0!r}", rd.line_of("integration", "dt"), "dt")
    _check(sample_every >= 1, f"sample_every must be >= 1, got {sample_every!r}",
           rd.line_of("integration", "sample_every"), "sample_every")
    _check(r_min > 0, f"r_min must be > 0, got {r_min!r}", rd.line_of("integration", "r_min"), "r_min")
    if cfg.has_central_potential:
        r0 = math.sqrt(sum(x * x for x in position))
        _check(r0 >= r_min, f"initial |r| = {r0!r} is inside r_min = {r_min!r}",
               rd.line_of("particle", "position"), "position")

    return Scenario(
        constants=k, field=cfg, position=position, momentum=momentum, spin=spin, mask=mask,
        acceleration=accel, t0=t0, t1=t1, dt=dt, sample_every=sample_every, r_min=r_min,
        output_csv=rd.get("output", "csv"), output_jsonl=rd.get("output", "jsonl"),
    )


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def _fmt_vec(v) -> str:
    return "(" + ", ".join(repr(float(x)) for x in v) + ")"


def format_scenario(sc: Scenario) -> str:
    """Canonical text of a scenario; ``parse_scenario`` inverts it exactly."""
    k = sc.constants
    cfg = sc.field
    out = ["[constants]", f"hbar = {k.hbar!r}", f"m = {k.m!r}", f"c = {k.c!r}", f"e = {k.e!r}", "",
           "[field]", f"family = {cfg.family}"]
    for key in sorted(FAMILY_KEYS[cfg.family]):
        val = getattr(cfg, key)
        if isinstance(val, tuple):
            out.append(f"{key} = {_fmt_vec(val)}")
        elif key == "helicity":
            out.append(f"{key} = {int(val)}")
        else:
            out.append(f"{key} = {float(val)!r}")
    out += ["", "[particle]", f"position = {_fmt_vec(sc.position)}", f"momentum = {_fmt_vec(sc.momentum)}",
            f"spin = {_fmt_vec(sc.spin)}", "", "[terms]"]
    out += [f"{n} = {'true' if getattr(sc.mask, n) else 'false'}" for n in TERM_NAMES]
    out += [f"acceleration = {sc.acceleration.value}", "", "[integration]",
            f"t0 = {sc.t0!r}", f"t1 = {sc.t1!r}", f"dt = {sc.dt!r}",
            f"sample_every = {sc.sample_every}", f"r_min = {sc.r_min!r}"]
    if sc.output_csv or sc.output_jsonl:
        out += ["", "[output]"]
        if sc.output_csv:
            out.append(f"csv = {sc.output_csv}")
        if sc.output_jsonl:
            out.append(f"jsonl = {sc.output_jsonl}")
    return "\n".join(out) + "\n"


# --- trajectory output --------------------------------------------------------------

CSV_COLUMNS = ("t", "rx", "ry", "rz", "px", "py", "pz", "sx", "sy", "sz",
               "h0", "so", "h1", "h2", "dv", "zeeman", "total")


def _row(sample) -> dict:
    terms = sample.terms.as_dict()
    row = {"t": float(sample.t)}
    for prefix, vec in (("r", sample.r), ("p", sample.p), ("s", sample.sigma)):
        for axis, val in zip("xyz", vec):
            row[prefix + axis] = float(val)
    row.update({name: float(terms[name]) for name in ("h0", "so", "h1", "h2", "dv", "zeeman", "total")})
    return row


def write_trajectory(rec: TrajectoryRecord, fmt: str = "csv") -> bytes:
    """Serialize a record; floats use the shortest round-trip decimal (``repr``)."""
    if not rec.samples:
        raise ValueError("cannot serialize an empty trajectory record")
    buf = io.StringIO()
    if fmt == "csv":
        buf.write(",".join(CSV_COLUMNS) + "\n")
        for s in rec.samples:
            row = _row(s)
            buf.write(",".join(repr(row[c]) for c in CSV_COLUMNS) + "\n")
    elif fmt == "jsonl":
        for s in rec.samples:
            buf.write(json.dumps(_row(s)) + "\n")
    else:
        raise ValueError(f"unknown trajectory format {fmt!r}")
    return buf.getvalue().encode("utf-8")


def read_trajectory_csv(data: bytes) -> list[dict]:
    lines = data.decode("utf-8").splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, map(float, ln.split(",")))) for ln in lines[1:]]


def read_trajectory_jsonl(data: bytes) -> list[dict]:
    return [json.loads(ln) for ln in data.decode("utf-8").splitlines() if ln]

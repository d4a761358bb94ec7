"""Run configuration: JSON parsing, validation and canonical emission.

A run is described by one JSON object:

    {
      "alpha": 0.0072973525693,
      "photon": {"lperp": [0.0, 0.0], "energy_mev": 1000.0},
      "train": [{"x": -1.0, "da": [-5.0, 0.0]},
                {"x":  1.0, "da": [ 5.0, 0.0]}],
      "evaluation": {
        "u": 0.5,
        "qperp": [0.0, 0.0],
        "grid": {"q1": [-8.0, 8.0, 256], "q2": [-8.0, 8.0, 256]}
      },
      "integration": {"rel_tol": 1e-8, "abs_tol": 0.0, "q_max": null,
                      "u_margin": 1e-9, "max_evals": 50000000},
      "output": {"bare": false, "breakdown": false}
    }

Only "train" is required; everything else falls back to the defaults
shown (q_max null means the automatic cutoff).  Which evaluation fields
must be present depends on the command: a point evaluation needs u and
qperp, a grid scan needs u and grid, the total probability needs neither.

Validation failures raise ConfigError carrying a JSON pointer to the
offending node and one of three categories: "syntax" (the text is not
JSON), "schema" (wrong type, wrong shape or unknown key) and "range"
(well-formed but impossible value, e.g. u = 1.0).  emit_config returns
the canonical dict form with defaults filled in and the train normalized;
parsing that dict reproduces the RunConfig exactly, which is what makes
the sidecar's config echo re-runnable bit for bit.
"""

import json
import math
from dataclasses import dataclass, field

from .kinematics import ALPHA_FS, PhotonProbe
from .pulses import normalize_train
from .integrate import IntegrationSpec


class ConfigError(ValueError):
    """A configuration problem, located by a JSON pointer.

    pointer is an RFC 6901 JSON pointer into the config document ("" is
    the root); category is "syntax", "schema" or "range".
    """

    def __init__(self, pointer, category, message):
        self.pointer = pointer
        self.category = category
        self.message = message
        super().__init__(f"{category} error at {pointer or '<root>'}: {message}")


def _join(pointer, key):
    token = str(key).replace("~", "~0").replace("/", "~1")
    return f"{pointer}/{token}"


def _as_object(node, pointer):
    if not isinstance(node, dict):
        raise ConfigError(pointer, "schema", f"expected an object, got {type(node).__name__}")
    return node


def _known_keys(node, pointer, allowed):
    for key in node:
        if key not in allowed:
            raise ConfigError(_join(pointer, key), "schema", "unknown key")


def _as_number(node, pointer):
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        raise ConfigError(pointer, "schema", f"expected a number, got {node!r}")
    value = float(node)
    if not math.isfinite(value):
        raise ConfigError(pointer, "range", f"must be finite, got {node!r}")
    return value


def _as_int(node, pointer):
    if isinstance(node, bool) or not isinstance(node, int):
        raise ConfigError(pointer, "schema", f"expected an integer, got {node!r}")
    return node


def _as_bool(node, pointer):
    if not isinstance(node, bool):
        raise ConfigError(pointer, "schema", f"expected true or false, got {node!r}")
    return node


def _as_pair(node, pointer):
    if not isinstance(node, list) or len(node) != 2:
        raise ConfigError(pointer, "schema", "expected a pair [x, y]")
    return (_as_number(node[0], _join(pointer, 0)),
            _as_number(node[1], _join(pointer, 1)))


def _as_axis(node, pointer):
    """A grid axis [lo, hi, n]."""
    if not isinstance(node, list) or len(node) != 3:
        raise ConfigError(pointer, "schema", "expected an axis [lo, hi, n]")
    lo = _as_number(node[0], _join(pointer, 0))
    hi = _as_number(node[1], _join(pointer, 1))
    n = _as_int(node[2], _join(pointer, 2))
    if n < 1:
        raise ConfigError(_join(pointer, 2), "range", f"need at least one point, got {n}")
    if hi < lo:
        raise ConfigError(pointer, "range", f"axis is reversed: [{lo}, {hi}]")
    return (lo, hi, n)


@dataclass(frozen=True)
class RunConfig:
    """Validated run description; the train is already normalized."""

    alpha: float
    probe: PhotonProbe
    train: object
    u: float = None
    qperp: tuple = None
    grid: tuple = None          # ((lo, hi, n), (lo, hi, n)) or None
    integration: IntegrationSpec = field(default_factory=IntegrationSpec)
    bare: bool = False
    breakdown: bool = False
    notes: tuple = ()


def parse_config(source):
    """Parse and validate a config document.

    source may be JSON text (str or bytes) or an already-decoded dict.
    Raises ConfigError with a JSON pointer on any problem.
    """
    if isinstance(source, (str, bytes, bytearray)):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ConfigError("", "syntax", str(exc)) from exc
    else:
        data = source
    _as_object(data, "")
    _known_keys(data, "", {"alpha", "photon", "train", "evaluation", "integration", "output"})

    alpha = ALPHA_FS
    if "alpha" in data:
        alpha = _as_number(data["alpha"], "/alpha")
        if alpha <= 0.0:
            raise ConfigError("/alpha", "range", f"must be positive, got {alpha}")

    lperp = (0.0, 0.0)
    energy = None
    if "photon" in data:
        photon = _as_object(data["photon"], "/photon")
        _known_keys(photon, "/photon", {"lperp", "energy_mev"})
        if "lperp" in photon:
            lperp = _as_pair(photon["lperp"], "/photon/lperp")
        if "energy_mev" in photon and photon["energy_mev"] is not None:
            energy = _as_number(photon["energy_mev"], "/photon/energy_mev")
            if energy <= 0.0:
                raise ConfigError("/photon/energy_mev", "range",
                                  f"must be positive, got {energy}")
    try:
        probe = PhotonProbe(lperp=lperp, energy_mev=energy)
    except ValueError as exc:
        raise ConfigError("/photon/energy_mev", "range", str(exc)) from exc

    if "train" not in data:
        raise ConfigError("/train", "schema", "missing required key")
    raw = data["train"]
    if not isinstance(raw, list):
        raise ConfigError("/train", "schema", f"expected a list, got {type(raw).__name__}")
    jumps = []
    for idx, item in enumerate(raw):
        here = _join("/train", idx)
        _as_object(item, here)
        _known_keys(item, here, {"x", "da"})
        if "x" not in item:
            raise ConfigError(_join(here, "x"), "schema", "missing required key")
        if "da" not in item:
            raise ConfigError(_join(here, "da"), "schema", "missing required key")
        x = _as_number(item["x"], _join(here, "x"))
        da = _as_pair(item["da"], _join(here, "da"))
        jumps.append((x, da))
    train = normalize_train(jumps)
    notes = []
    coincident = len(jumps) - len({x for x, _ in jumps})
    if coincident:
        notes.append(f"merged {coincident} coincident jump(s)")
    vanished = len({x for x, _ in jumps}) - len(train)
    if vanished:
        notes.append(f"dropped {vanished} vanishing jump(s)")

    u = None
    qperp = None
    grid = None
    if "evaluation" in data:
        ev = _as_object(data["evaluation"], "/evaluation")
        _known_keys(ev, "/evaluation", {"u", "qperp", "grid"})
        if "u" in ev:
            u = _as_number(ev["u"], "/evaluation/u")
            if not 0.0 < u < 1.0:
                raise ConfigError("/evaluation/u", "range",
                                  f"must lie strictly inside (0, 1), got {u}")
        if "qperp" in ev:
            qperp = _as_pair(ev["qperp"], "/evaluation/qperp")
        if "grid" in ev:
            g = _as_object(ev["grid"], "/evaluation/grid")
            _known_keys(g, "/evaluation/grid", {"q1", "q2"})
            for key in ("q1", "q2"):
                if key not in g:
                    raise ConfigError(_join("/evaluation/grid", key), "schema",
                                      "missing required key")
            grid = (_as_axis(g["q1"], "/evaluation/grid/q1"),
                    _as_axis(g["q2"], "/evaluation/grid/q2"))

    kwargs = {}
    if "integration" in data:
        spec = _as_object(data["integration"], "/integration")
        _known_keys(spec, "/integration",
                    {"rel_tol", "abs_tol", "q_max", "u_margin", "max_evals"})
        if "rel_tol" in spec:
            kwargs["rel_tol"] = _as_number(spec["rel_tol"], "/integration/rel_tol")
        if "abs_tol" in spec:
            kwargs["abs_tol"] = _as_number(spec["abs_tol"], "/integration/abs_tol")
        if "q_max" in spec and spec["q_max"] is not None:
            kwargs["q_max"] = _as_number(spec["q_max"], "/integration/q_max")
        if "u_margin" in spec:
            kwargs["u_margin"] = _as_number(spec["u_margin"], "/integration/u_margin")
        if "max_evals" in spec:
            kwargs["max_evals"] = _as_int(spec["max_evals"], "/integration/max_evals")
    try:
        integration = IntegrationSpec(**kwargs)
    except ValueError as exc:
        # IntegrationSpec names the offending field first in its message.
        for name in ("rel_tol", "abs_tol", "q_max", "u_margin", "max_evals"):
            if str(exc).startswith(name):
                raise ConfigError(f"/integration/{name}", "range", str(exc)) from exc
        raise ConfigError("/integration", "range", str(exc)) from exc

    bare = False
    breakdown = False
    if "output" in data:
        out = _as_object(data["output"], "/output")
        _known_keys(out, "/output", {"bare", "breakdown"})
        if "bare" in out:
            bare = _as_bool(out["bare"], "/output/bare")
        if "breakdown" in out:
            breakdown = _as_bool(out["breakdown"], "/output/breakdown")

    return RunConfig(alpha=alpha, probe=probe, train=train, u=u, qperp=qperp,
                     grid=grid, integration=integration, bare=bare,
                     breakdown=breakdown, notes=tuple(notes))


def emit_config(config):
    """The canonical dict form of a RunConfig.

    Defaults are written out, the train appears normalized, and parsing
    the result reproduces the RunConfig exactly (up to the normalization
    notes, which no longer apply to an already-normalized train).
    """
    photon = {"lperp": list(config.probe.lperp)}
    if config.probe.energy_mev is not None:
        photon["energy_mev"] = config.probe.energy_mev
    evaluation = {}
    if config.u is not None:
        evaluation["u"] = config.u
    if config.qperp is not None:
        evaluation["qperp"] = list(config.qperp)
    if config.grid is not None:
        evaluation["grid"] = {"q1": list(config.grid[0]), "q2": list(config.grid[1])}
    spec = config.integration
    return {
        "alpha": config.alpha,
        "photon": photon,
        "train": [{"x": j.x, "da": list(j.da)} for j in config.train.jumps],
        "evaluation": evaluation,
        "integration": {
            "rel_tol": spec.rel_tol,
            "abs_tol": spec.abs_tol,
            "q_max": spec.q_max,
            "u_margin": spec.u_margin,
            "max_evals": spec.max_evals,
        },
        "output": {"bare": config.bare, "breakdown": config.breakdown},
    }

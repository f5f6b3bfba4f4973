"""Circuit files: a strict versioned JSON schema and its execution.

A circuit document looks like::

    {
      "schema": "tfsim/1",
      "modes": 2,
      "inputs": [{"type": "gaussian", "width": 1.0},
                 {"type": "gaussian", "width": 1.5}],
      "ops": [{"gate": "fbs", "targets": [0, 1], "params": {}},
              {"gate": "frft", "targets": [0], "params": {"phi": 0.7}}]
    }

The "schema" key may be omitted on input and defaults to "tfsim/1";
:func:`circuit_to_json` always emits it. Parsing is strict: unknown keys,
unknown gates, wrong arities, and non-finite numbers are rejected with a
:class:`~tfsim.exceptions.SchemaError` that names the offending location.

Each input mode starts as a Gaussian of the given spectral width (width 1 is
the reference vacuum), implemented as a bandwidth-scaling gate on the unit
vacuum; the ops then run in order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .exceptions import SchemaError, UnknownGateError
from .gaussian import apply, displace, fbs, frft, scale, vacuum_state

__all__ = [
    "SCHEMA_VERSION",
    "GateSpec",
    "CircuitSpec",
    "parse_circuit",
    "circuit_to_json",
    "gate_ops",
    "run_circuit",
]

SCHEMA_VERSION = "tfsim/1"

# gate name -> (number of targets, required parameter names)
_GATE_SIGNATURES = {
    "fbs": (2, ()),
    "frft": (1, ("phi",)),
    "scale": (1, ("s",)),
    "displace": (1, ("omega0", "t0")),
}


@dataclass(frozen=True)
class GateSpec:
    """One validated circuit operation."""

    gate: str
    targets: tuple
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CircuitSpec:
    """A validated circuit: mode count, input widths, ordered gates."""

    modes: int
    inputs: tuple
    ops: tuple


def _require_keys(obj, required, optional, location):
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise SchemaError(f"unknown keys {unknown}", location=location)
    missing = sorted(set(required) - set(obj))
    if missing:
        raise SchemaError(f"missing keys {missing}", location=location)


def _number(value, location, positive=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError("expected a number", location=location)
    value = float(value)
    if not math.isfinite(value):
        raise SchemaError("number must be finite", location=location)
    if positive and value <= 0.0:
        raise SchemaError("number must be positive", location=location)
    return value


def _parse_input(entry, mode, modes):
    location = f"$.inputs[{mode}]"
    if not isinstance(entry, dict):
        raise SchemaError("expected an object", location=location)
    _require_keys(entry, ("type", "width"), (), location)
    if entry["type"] != "gaussian":
        raise SchemaError(
            f"unknown input type {entry['type']!r}; only 'gaussian' is supported",
            location=f"{location}.type",
        )
    return _number(entry["width"], f"{location}.width", positive=True)


def _parse_op(entry, index, modes):
    location = f"$.ops[{index}]"
    if not isinstance(entry, dict):
        raise SchemaError("expected an object", location=location)
    _require_keys(entry, ("gate", "targets"), ("params",), location)
    gate = entry["gate"]
    if not isinstance(gate, str) or gate not in _GATE_SIGNATURES:
        raise UnknownGateError(f"unknown gate {gate!r}", location=f"{location}.gate")
    arity, param_names = _GATE_SIGNATURES[gate]
    targets = entry["targets"]
    if not isinstance(targets, list) or len(targets) != arity:
        raise SchemaError(
            f"gate {gate!r} takes exactly {arity} target(s)", location=f"{location}.targets"
        )
    clean_targets = []
    for j, t in enumerate(targets):
        if isinstance(t, bool) or not isinstance(t, int):
            raise SchemaError("targets must be integers", location=f"{location}.targets[{j}]")
        if not 0 <= t < modes:
            raise SchemaError(
                f"target {t} outside 0..{modes - 1}", location=f"{location}.targets[{j}]"
            )
        clean_targets.append(t)
    if arity == 2 and clean_targets[0] == clean_targets[1]:
        raise SchemaError("targets must be distinct", location=f"{location}.targets")
    raw_params = entry.get("params", {})
    if not isinstance(raw_params, dict):
        raise SchemaError("expected an object", location=f"{location}.params")
    _require_keys(raw_params, param_names, (), f"{location}.params")
    params = {
        name: _number(raw_params[name], f"{location}.params.{name}", positive=(name == "s"))
        for name in param_names
    }
    return GateSpec(gate=gate, targets=tuple(clean_targets), params=params)


def parse_circuit(text):
    """Parse and validate a circuit document from JSON text."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"invalid JSON: {exc.msg}", location=f"line {exc.lineno} column {exc.colno}"
        ) from exc
    if not isinstance(doc, dict):
        raise SchemaError("expected a JSON object", location="$")
    _require_keys(doc, ("modes", "inputs", "ops"), ("schema",), "$")
    if doc.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise SchemaError(
            f"unsupported schema {doc['schema']!r}; expected {SCHEMA_VERSION!r}",
            location="$.schema",
        )
    modes = doc["modes"]
    if isinstance(modes, bool) or not isinstance(modes, int) or modes < 1:
        raise SchemaError("modes must be an integer >= 1", location="$.modes")
    inputs = doc["inputs"]
    if not isinstance(inputs, list) or len(inputs) != modes:
        raise SchemaError(f"inputs must list exactly {modes} entries", location="$.inputs")
    widths = tuple(_parse_input(entry, i, modes) for i, entry in enumerate(inputs))
    ops_doc = doc["ops"]
    if not isinstance(ops_doc, list):
        raise SchemaError("ops must be a list", location="$.ops")
    ops = tuple(_parse_op(entry, i, modes) for i, entry in enumerate(ops_doc))
    return CircuitSpec(modes=modes, inputs=widths, ops=ops)


def circuit_to_json(spec):
    """Canonical serialization; parse_circuit of the result is the identity."""
    doc = {
        "schema": SCHEMA_VERSION,
        "modes": spec.modes,
        "inputs": [{"type": "gaussian", "width": w} for w in spec.inputs],
        "ops": [
            {"gate": op.gate, "targets": list(op.targets), "params": op.params}
            for op in spec.ops
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def gate_ops(spec):
    """Symplectic operators for the circuit: input scalings, then the gates."""
    n = spec.modes
    ops = [
        scale(mode, width, n)
        for mode, width in enumerate(spec.inputs)
        if width != 1.0
    ]
    for op in spec.ops:
        if op.gate == "fbs":
            ops.append(fbs(op.targets[0], op.targets[1], n))
        elif op.gate == "frft":
            ops.append(frft(op.targets[0], op.params["phi"], n))
        elif op.gate == "scale":
            ops.append(scale(op.targets[0], op.params["s"], n))
        else:
            ops.append(displace(op.targets[0], op.params["omega0"], op.params["t0"], n))
    return ops


def run_circuit(spec):
    """Execute the circuit on the vacuum and return the final Gaussian state."""
    state = vacuum_state(spec.modes)
    for op in gate_ops(spec):
        state = apply(state, op)
    return state

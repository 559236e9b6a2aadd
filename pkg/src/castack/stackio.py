"""Reading and writing stack and cavity description files.

Stacks are stored as JSON with a single top-level "layers" array, each
entry naming a material and a thickness in meters:

    {
      "layers": [
        {"material": "perfect_conductor", "thickness_m": "semi_infinite"},
        {"material": "vacuum", "thickness_m": 1e-06},
        {"material": {"model": "drude", "omega_p": 1.2e16, "gamma": 1e14},
         "thickness_m": "semi_infinite"}
      ]
    }

Material descriptors are the strings "vacuum" and "perfect_conductor"
or an object with a "model" key: {"model": "constant", "epsilon": x},
{"model": "drude", "omega_p": x, "gamma": x}, or {"model": "lorentz",
"omega_0": x, "omega_p": x, "gamma": x}. All numbers are finite SI
values.

Cavity files describe a slab suspended between two mirrors:

    {
      "medium": "vacuum",
      "slab": {"material": {"model": "constant", "epsilon": 4.0},
               "thickness_m": 2e-07},
      "d1_m": 1e-06,
      "d2_m": 5e-07,
      "left_mirror": [{"material": "perfect_conductor",
                       "thickness_m": "semi_infinite"}],
      "right_mirror": [{"material": "perfect_conductor",
                        "thickness_m": "semi_infinite"}]
    }

Mirror arrays list layers from the cavity outward, so the last entry of
each must be semi-infinite or a perfect conductor; omitting a mirror
defaults it to a bare perfect conductor. Validation failures raise
StackFileError with a message naming the offending field by its JSON
path, e.g. "layers[1].thickness_m: must be a positive finite number".
Serialization writes floats at full precision, so parse -> serialize ->
parse reproduces the original objects exactly.
"""

from __future__ import annotations

import json
import math
import os

from .casimir import CavityConfig
from .fresnel import Layer, Stack
from .materials import Constant, Drude, Lorentz, Material, PerfectConductor, Vacuum

__all__ = [
    "StackFileError",
    "parse_stack",
    "load_stack",
    "serialize_stack",
    "parse_cavity",
    "load_cavity",
    "serialize_cavity",
]


class StackFileError(ValueError):
    """A stack or cavity file failed validation.

    The message names the offending field by its JSON path.
    """


_MODEL_FIELDS = {
    "constant": ("epsilon",),
    "drude": ("omega_p", "gamma"),
    "lorentz": ("omega_0", "omega_p", "gamma"),
}


def _fail(path: str, msg: str):
    raise StackFileError(f"{path}: {msg}")


def _require_object(value, path: str, allowed: tuple[str, ...]) -> None:
    if not isinstance(value, dict):
        _fail(path, f"expected an object, got {type(value).__name__}")
    unknown = sorted(set(value) - set(allowed))
    if unknown:
        _fail(path, f"unknown field(s) {unknown}; allowed fields are {sorted(allowed)}")


def _number(raw, path: str) -> float:
    # bool is an int subclass; true/false are never valid numbers here
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        _fail(path, f"expected a number, got {raw!r}")
    value = float(raw)
    if not math.isfinite(value):
        _fail(path, f"must be finite, got {raw!r}")
    return value


def _positive_number(raw, path: str) -> float:
    value = _number(raw, path)
    if value <= 0.0:
        _fail(path, f"must be > 0, got {raw!r}")
    return value


def _parse_thickness(raw, path: str) -> float:
    if raw == "semi_infinite":
        return math.inf
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        _fail(path, f'must be a positive finite number or "semi_infinite", got {raw!r}')
    value = float(raw)
    if not (math.isfinite(value) and value > 0.0):
        _fail(path, f'must be a positive finite number or "semi_infinite", got {raw!r}')
    return value


def _parse_material(raw, path: str) -> Material:
    if isinstance(raw, str):
        if raw == "vacuum":
            return Vacuum()
        if raw == "perfect_conductor":
            return PerfectConductor()
        _fail(path, f'string material must be "vacuum" or "perfect_conductor", got {raw!r}')
    if not isinstance(raw, dict):
        _fail(path, f"expected a material name or a model object, got {raw!r}")
    model = raw.get("model")
    if model not in _MODEL_FIELDS:
        _fail(f"{path}.model", f"expected one of {sorted(_MODEL_FIELDS)}, got {model!r}")
    fields = _MODEL_FIELDS[model]
    _require_object(raw, path, ("model",) + fields)
    values = {}
    for name in fields:
        if name not in raw:
            _fail(f"{path}.{name}", "missing required field")
        values[name] = _number(raw[name], f"{path}.{name}")
    try:
        if model == "constant":
            return Constant(values["epsilon"])
        if model == "drude":
            return Drude(omega_p=values["omega_p"], gamma=values["gamma"])
        return Lorentz(omega_0=values["omega_0"], omega_p=values["omega_p"], gamma=values["gamma"])
    except ValueError as exc:
        _fail(path, str(exc))


def _parse_layer(raw, path: str) -> Layer:
    _require_object(raw, path, ("material", "thickness_m"))
    for name in ("material", "thickness_m"):
        if name not in raw:
            _fail(f"{path}.{name}", "missing required field")
    material = _parse_material(raw["material"], f"{path}.material")
    thickness = _parse_thickness(raw["thickness_m"], f"{path}.thickness_m")
    try:
        return Layer(material, thickness)
    except ValueError as exc:
        _fail(path, str(exc))


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise StackFileError(f"not valid JSON: {exc}") from None


def parse_stack(text: str) -> Stack:
    """Build a Stack from the JSON text of a stack file.

    Raises StackFileError on any schema or invariant violation, with the
    offending field named by its JSON path.
    """
    data = _load_json(text)
    _require_object(data, "top level", ("layers",))
    if "layers" not in data:
        _fail("layers", "missing required field")
    raw_layers = data["layers"]
    if not isinstance(raw_layers, list):
        _fail("layers", f"expected an array, got {type(raw_layers).__name__}")
    layers = tuple(_parse_layer(entry, f"layers[{i}]") for i, entry in enumerate(raw_layers))
    try:
        return Stack(layers)
    except ValueError as exc:
        raise StackFileError(f"layers: {exc}") from None


def load_stack(path: str | os.PathLike) -> Stack:
    """parse_stack on the contents of a file."""
    with open(path, encoding="utf-8") as handle:
        return parse_stack(handle.read())


def _material_doc(material: Material):
    if isinstance(material, Vacuum):
        return "vacuum"
    if isinstance(material, PerfectConductor):
        return "perfect_conductor"
    if isinstance(material, Constant):
        return {"model": "constant", "epsilon": material.epsilon}
    if isinstance(material, Drude):
        return {"model": "drude", "omega_p": material.omega_p, "gamma": material.gamma}
    if isinstance(material, Lorentz):
        return {
            "model": "lorentz",
            "omega_0": material.omega_0,
            "omega_p": material.omega_p,
            "gamma": material.gamma,
        }
    raise TypeError(f"cannot serialize material {material!r}")


def _layer_doc(layer: Layer):
    thickness = "semi_infinite" if math.isinf(layer.thickness) else layer.thickness
    return {"material": _material_doc(layer.material), "thickness_m": thickness}


def serialize_stack(stack: Stack) -> str:
    """JSON text for a Stack; parsing it back yields an equal Stack."""
    doc = {"layers": [_layer_doc(layer) for layer in stack.layers]}
    return json.dumps(doc, indent=2) + "\n"


_CAVITY_FIELDS = ("medium", "slab", "d1_m", "d2_m", "left_mirror", "right_mirror")


def parse_cavity(text: str) -> CavityConfig:
    """Build a CavityConfig from the JSON text of a cavity file.

    left_mirror and right_mirror are optional and default to a bare
    perfect conductor; all other fields are required.
    """
    data = _load_json(text)
    _require_object(data, "top level", _CAVITY_FIELDS)
    for name in ("medium", "slab", "d1_m", "d2_m"):
        if name not in data:
            _fail(name, "missing required field")
    medium = _parse_material(data["medium"], "medium")
    raw_slab = data["slab"]
    _require_object(raw_slab, "slab", ("material", "thickness_m"))
    for name in ("material", "thickness_m"):
        if name not in raw_slab:
            _fail(f"slab.{name}", "missing required field")
    slab_material = _parse_material(raw_slab["material"], "slab.material")
    slab_thickness = _parse_thickness(raw_slab["thickness_m"], "slab.thickness_m")
    d1 = _positive_number(data["d1_m"], "d1_m")
    d2 = _positive_number(data["d2_m"], "d2_m")
    mirrors = {}
    for name in ("left_mirror", "right_mirror"):
        if name not in data:
            mirrors[name] = (Layer(PerfectConductor()),)
            continue
        raw = data[name]
        if not isinstance(raw, list) or not raw:
            _fail(name, "expected a non-empty array of layer objects")
        mirrors[name] = tuple(_parse_layer(entry, f"{name}[{i}]") for i, entry in enumerate(raw))
    try:
        return CavityConfig(
            medium=medium,
            slab_material=slab_material,
            slab_thickness=slab_thickness,
            d1=d1,
            d2=d2,
            left_mirror=mirrors["left_mirror"],
            right_mirror=mirrors["right_mirror"],
        )
    except ValueError as exc:
        raise StackFileError(str(exc)) from None


def load_cavity(path: str | os.PathLike) -> CavityConfig:
    """parse_cavity on the contents of a file."""
    with open(path, encoding="utf-8") as handle:
        return parse_cavity(handle.read())


def serialize_cavity(config: CavityConfig) -> str:
    """JSON text for a CavityConfig; parsing it back yields an equal config."""
    slab_thickness = (
        "semi_infinite" if math.isinf(config.slab_thickness) else config.slab_thickness
    )
    doc = {
        "medium": _material_doc(config.medium),
        "slab": {"material": _material_doc(config.slab_material), "thickness_m": slab_thickness},
        "d1_m": config.d1,
        "d2_m": config.d2,
        "left_mirror": [_layer_doc(layer) for layer in config.left_mirror],
        "right_mirror": [_layer_doc(layer) for layer in config.right_mirror],
    }
    return json.dumps(doc, indent=2) + "\n"

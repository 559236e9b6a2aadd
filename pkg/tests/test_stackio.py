"""Stack/cavity file parsing: round trips and field-level diagnostics."""

import json
import math

import numpy as np
import pytest

from castack.casimir import CavityConfig
from castack.fresnel import Layer, Stack, half_space
from castack.materials import Constant, Drude, Lorentz, PerfectConductor, Vacuum
from castack.stackio import (
    StackFileError,
    load_cavity,
    load_stack,
    parse_cavity,
    parse_stack,
    serialize_cavity,
    serialize_stack,
)

MINIMAL = json.dumps(
    {
        "layers": [
            {"material": "vacuum", "thickness_m": "semi_infinite"},
            {"material": {"model": "constant", "epsilon": 2.0}, "thickness_m": "semi_infinite"},
        ]
    }
)


def _random_material(rng, allow_pec=True):
    roll = rng.integers(0, 5 if allow_pec else 4)
    if roll == 0:
        return Vacuum()
    if roll == 1:
        return Constant(float(rng.uniform(1.2, 9.0)))
    if roll == 2:
        return Drude(omega_p=float(10 ** rng.uniform(15, 16.3)), gamma=float(10 ** rng.uniform(13, 15)))
    if roll == 3:
        return Lorentz(
            omega_0=float(10 ** rng.uniform(14.5, 16)),
            omega_p=float(10 ** rng.uniform(15, 16.3)),
            gamma=float(10 ** rng.uniform(13, 15)),
        )
    return PerfectConductor()


class TestParseStack:
    def test_minimal_two_half_spaces(self):
        stack = parse_stack(MINIMAL)
        assert len(stack.layers) == 2
        assert stack.layers[0].material == Vacuum()
        assert stack.layers[1].material == Constant(2.0)
        assert all(lay.is_semi_infinite for lay in stack.layers)

    def test_every_material_form(self):
        text = json.dumps(
            {
                "layers": [
                    {"material": "perfect_conductor", "thickness_m": "semi_infinite"},
                    {"material": {"model": "lorentz", "omega_0": 2e15, "omega_p": 7e15, "gamma": 3e14},
                     "thickness_m": 1.5e-7},
                    {"material": "vacuum", "thickness_m": 1e-6},
                    {"material": {"model": "drude", "omega_p": 1.2e16, "gamma": 1e14},
                     "thickness_m": "semi_infinite"},
                ]
            }
        )
        stack = parse_stack(text)
        assert stack.layers[0].is_pec
        assert stack.layers[1].material == Lorentz(omega_0=2e15, omega_p=7e15, gamma=3e14)
        assert stack.layers[2].thickness == 1e-6
        assert stack.layers[3].material == Drude(omega_p=1.2e16, gamma=1e14)

    def test_round_trip_random_stacks(self):
        rng = np.random.default_rng(99)
        for _ in range(25):
            layers = [half_space(_random_material(rng))]
            for _ in range(int(rng.integers(0, 4))):
                material = _random_material(rng)
                if isinstance(material, PerfectConductor):
                    layers.append(Layer(material))
                else:
                    layers.append(Layer(material, float(10 ** rng.uniform(-8, -5))))
            layers.append(half_space(_random_material(rng)))
            stack = Stack(tuple(layers))
            assert parse_stack(serialize_stack(stack)) == stack

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "stack.json"
        path.write_text(MINIMAL, encoding="utf-8")
        assert load_stack(path) == parse_stack(MINIMAL)

    @pytest.mark.parametrize(
        "doc,needle",
        [
            ({"layers": [{"material": "vacuum", "thickness_m": -1e-6},
                         {"material": "vacuum", "thickness_m": "semi_infinite"}]},
             "layers[0].thickness_m"),
            ({"layers": [{"material": "vacuum", "thickness_m": "semi_infinite"},
                         {"material": "vacuum", "thickness_m": "thick"}]},
             "layers[1].thickness_m"),
            ({"layers": [{"material": "vacuum", "thickness_m": "semi_infinite"},
                         {"material": "unobtainium", "thickness_m": "semi_infinite"}]},
             "layers[1].material"),
            ({"layers": [{"material": {"model": "constant"}, "thickness_m": "semi_infinite"},
                         {"material": "vacuum", "thickness_m": "semi_infinite"}]},
             "layers[0].material.epsilon"),
            ({"layers": [{"material": {"model": "maxwell"}, "thickness_m": "semi_infinite"},
                         {"material": "vacuum", "thickness_m": "semi_infinite"}]},
             "layers[0].material.model"),
            ({"layers": [{"material": {"model": "constant", "epsilon": 0.5},
                          "thickness_m": "semi_infinite"},
                         {"material": "vacuum", "thickness_m": "semi_infinite"}]},
             "layers[0].material"),
            ({"layers": [{"material": {"model": "drude", "omega_p": 1e16, "gamma": 1e14,
                                       "extra": 1}, "thickness_m": "semi_infinite"},
                         {"material": "vacuum", "thickness_m": "semi_infinite"}]},
             "layers[0].material"),
            ({"layers": [{"material": "vacuum", "thickness_m": "semi_infinite"},
                         {"material": "vacuum", "thickness_m": "semi_infinite", "color": "red"}]},
             "layers[1]"),
            ({"layers": [{"material": "vacuum"},
                         {"material": "vacuum", "thickness_m": "semi_infinite"}]},
             "layers[0].thickness_m"),
            ({"layers": [{"thickness_m": "semi_infinite"},
                         {"material": "vacuum", "thickness_m": "semi_infinite"}]},
             "layers[0].material"),
        ],
    )
    def test_field_level_diagnostics(self, doc, needle):
        with pytest.raises(StackFileError) as err:
            parse_stack(json.dumps(doc))
        assert needle in str(err.value)

    def test_structural_errors(self):
        with pytest.raises(StackFileError):
            parse_stack("not json at all")
        with pytest.raises(StackFileError):
            parse_stack(json.dumps(["layers"]))
        with pytest.raises(StackFileError):
            parse_stack(json.dumps({"stack": []}))
        with pytest.raises(StackFileError):
            parse_stack(json.dumps({"layers": "none"}))
        # finite outer layer violates the stack invariant
        with pytest.raises(StackFileError) as err:
            parse_stack(
                json.dumps(
                    {
                        "layers": [
                            {"material": "vacuum", "thickness_m": 1e-6},
                            {"material": "vacuum", "thickness_m": "semi_infinite"},
                        ]
                    }
                )
            )
        assert "layers" in str(err.value)

    def test_json_infinity_rejected(self):
        # json.loads accepts bare Infinity; the schema must not
        text = '{"layers": [{"material": {"model": "drude", "omega_p": Infinity, "gamma": 0.0}, "thickness_m": "semi_infinite"}, {"material": "vacuum", "thickness_m": "semi_infinite"}]}'
        with pytest.raises(StackFileError) as err:
            parse_stack(text)
        assert "omega_p" in str(err.value)


class TestParseCavity:
    def _doc(self):
        return {
            "medium": "vacuum",
            "slab": {"material": {"model": "constant", "epsilon": 4.0}, "thickness_m": 2e-7},
            "d1_m": 1e-6,
            "d2_m": 5e-7,
            "left_mirror": [{"material": "perfect_conductor", "thickness_m": "semi_infinite"}],
            "right_mirror": [
                {"material": {"model": "constant", "epsilon": 11.9}, "thickness_m": 3e-7},
                {"material": {"model": "drude", "omega_p": 1.3e16, "gamma": 7e13},
                 "thickness_m": "semi_infinite"},
            ],
        }

    def test_parse_and_round_trip(self):
        config = parse_cavity(json.dumps(self._doc()))
        assert config.medium == Vacuum()
        assert config.slab_material == Constant(4.0)
        assert config.d1 == 1e-6 and config.d2 == 5e-7
        assert len(config.right_mirror) == 2
        assert parse_cavity(serialize_cavity(config)) == config

    def test_mirrors_default_to_perfect_conductors(self):
        doc = self._doc()
        del doc["left_mirror"]
        del doc["right_mirror"]
        config = parse_cavity(json.dumps(doc))
        assert config.left_mirror == (Layer(PerfectConductor()),)
        assert config.right_mirror == (Layer(PerfectConductor()),)

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "cavity.json"
        path.write_text(json.dumps(self._doc()), encoding="utf-8")
        assert load_cavity(path) == parse_cavity(json.dumps(self._doc()))

    @pytest.mark.parametrize("missing", ["medium", "slab", "d1_m", "d2_m"])
    def test_missing_required_field(self, missing):
        doc = self._doc()
        del doc[missing]
        with pytest.raises(StackFileError) as err:
            parse_cavity(json.dumps(doc))
        assert missing in str(err.value)

    def test_bad_fields_are_named(self):
        doc = self._doc()
        doc["d1_m"] = 0.0
        with pytest.raises(StackFileError) as err:
            parse_cavity(json.dumps(doc))
        assert "d1_m" in str(err.value)

        doc = self._doc()
        doc["slab"]["thickness_m"] = -2e-7
        with pytest.raises(StackFileError) as err:
            parse_cavity(json.dumps(doc))
        assert "slab.thickness_m" in str(err.value)

        doc = self._doc()
        doc["right_mirror"][0]["material"] = "metal"
        with pytest.raises(StackFileError) as err:
            parse_cavity(json.dumps(doc))
        assert "right_mirror[0].material" in str(err.value)

        doc = self._doc()
        doc["left_mirror"] = []
        with pytest.raises(StackFileError) as err:
            parse_cavity(json.dumps(doc))
        assert "left_mirror" in str(err.value)

    def test_config_invariants_still_apply(self):
        # lossy medium is structurally invalid for the cavity
        doc = self._doc()
        doc["medium"] = {"model": "drude", "omega_p": 1e16, "gamma": 1e14}
        with pytest.raises(StackFileError):
            parse_cavity(json.dumps(doc))

    def test_pec_slab_round_trip(self):
        config = CavityConfig(
            medium=Constant(2.0),
            slab_material=PerfectConductor(),
            slab_thickness=math.inf,
            d1=1e-6,
            d2=5e-7,
        )
        assert parse_cavity(serialize_cavity(config)) == config

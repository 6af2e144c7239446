"""The five reference scenarios shipped with the package."""
from __future__ import annotations

from importlib import resources

from .dsl import ControlScenario, parse_scenario

BUILTINS = ("thermostat-digital", "thermostat-bimetal", "governor", "car-heater-human", "agc-parity")


def builtin_source(name: str) -> str:
    if name not in BUILTINS:
        raise KeyError(f"no builtin scenario {name!r} (choose from: {', '.join(BUILTINS)})")
    return resources.files(__package__).joinpath("builtin", f"{name}.scn").read_text(encoding="utf-8")


def load_builtin(name: str, overrides=()) -> ControlScenario:
    return parse_scenario(builtin_source(name), overrides)

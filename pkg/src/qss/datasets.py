"""Bundled data: the ibmqx4 coupling map, reference run statistics, and the
shipped noise calibration."""

from __future__ import annotations

import json
from importlib import resources

from .noise import NoiseModel
from .routing import CouplingGraph


def _load(name: str) -> dict:
    with resources.files("qss.data").joinpath(name).open("r", encoding="utf-8") as fh:
        return json.load(fh)


def data_file_path(name: str) -> str:
    """Filesystem path of a bundled data file."""
    return str(resources.files("qss.data").joinpath(name))


def load_ibmqx4_coupling() -> CouplingGraph:
    """The 5-qubit bowtie coupling map (directed CNOT edges)."""
    obj = _load("ibmqx4.json")
    return CouplingGraph.from_json(obj)


def load_reference_runs() -> dict:
    """Target statistics for the secret-sharing circuit on ibmqx4."""
    return _load("ibmqx4_reference.json")


def load_shipped_calibration() -> dict:
    """The committed calibration fit (see the calibrate subcommand)."""
    return _load("ibmqx4_calibration.json")


def shipped_noise_model() -> NoiseModel:
    """NoiseModel from the committed calibration file."""
    return NoiseModel.from_json(load_shipped_calibration())

"""Shipped fixture files (three-decimal transcriptions of the printed matrices)."""

import json
import os
from importlib import resources
from pathlib import Path

#: Directory that overrides the shipped fixtures (useful for fault injection).
DATA_DIR_ENV = "MUMWITNESS_DATA_DIR"

FIXTURE_FILES = (
    "mum_d3_printed.json",
    "mum_d6_printed.json",
    "mub_d6_printed.json",
    "rho_3x3_printed.json",
    "rho_6x6_blocks.json",
    "witness_d3_printed.json",
)


def load(name: str) -> dict:
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        with open(Path(override) / name) as fh:
            return json.load(fh)
    with resources.files(__name__).joinpath(name).open() as fh:
        return json.load(fh)

"""Python access to the bimod library and CLI."""

import json

from ._bimod import (
    BimodError,
    example,
    is_spherical,
    min_index,
    run,
    sphericalizing_weight,
    tpc,
    weight_space_dimension,
)

__all__ = [
    "BimodError",
    "example",
    "is_spherical",
    "min_index",
    "run",
    "sphericalizing_weight",
    "tpc",
    "tpc_verdict",
    "weight_space_dimension",
]


def tpc_verdict(document: str) -> dict:
    return json.loads(tpc(document))

"""Homotopy posets of finite categories and obstructions to compositionality."""

import json

from ._obstructia import (
    Category,
    Function,
    ObstructiaError,
    OpenGraph,
    Report,
    act,
    gf2_separable,
    gf2_tensor,
    laxator,
    laxator_obstructions,
    pi1_laxator,
    run_cli,
    state_obstructions,
)


def report_dict(report):
    """The interchange document of a report as a plain dict."""
    return json.loads(report.to_json())


__all__ = [
    "Category",
    "Function",
    "ObstructiaError",
    "OpenGraph",
    "Report",
    "act",
    "gf2_separable",
    "gf2_tensor",
    "laxator",
    "laxator_obstructions",
    "pi1_laxator",
    "report_dict",
    "run_cli",
    "state_obstructions",
]

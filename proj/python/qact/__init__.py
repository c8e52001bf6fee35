"""Quantum Algorithm Cards toolkit.

Cards are plain dicts mirroring the card JSON schema; circuits are
OpenQASM 2.0 source strings. The heavy lifting happens in the compiled
``_qact`` extension.
"""

import json as _json

from ._qact import (
    QAC_VERSION,
    DomainError,
    Error,
    EvalError,
    ParseError,
    QasmError,
    ValidationError,
    canonical_qasm,
    sha256_hex,
)
from . import _qact as _core

__all__ = [
    "QAC_VERSION",
    "DomainError",
    "Error",
    "EvalError",
    "ParseError",
    "QasmError",
    "ValidationError",
    "analyze",
    "attach_circuit",
    "audience_sections",
    "canonical_qasm",
    "match",
    "render_markdown",
    "scaffold_card",
    "serialize_card",
    "sha256_hex",
    "validate_card",
]

__version__ = "0.1.0"


def analyze(source):
    """Resource metrics of an OpenQASM 2.0 source, as a dict."""
    return _json.loads(_core.metrics_json(source))


def scaffold_card(name):
    """A fresh card dict for the given algorithm name."""
    return _json.loads(_core.scaffold_card_json(name))


def serialize_card(card):
    """Canonical JSON text of a card dict."""
    return _core.serialize_card(_json.dumps(card))


def attach_circuit(card, source, path):
    """Card dict with usage details derived from the circuit source."""
    return _json.loads(_core.attach_circuit_json(_json.dumps(card), source, path))


def validate_card(card, audience=None):
    """Validation report dict: valid, missing_sections, field_errors."""
    return _json.loads(_core.validate_card_json(_json.dumps(card), audience))


def render_markdown(card, audience=None):
    """CommonMark rendering of a card dict."""
    return _core.render_markdown(_json.dumps(card), audience)


def match(card, profiles, shots=None):
    """Ranked fit reports of a card dict against a list of profile dicts."""
    return _json.loads(_core.match_json(_json.dumps(card), _json.dumps(profiles), shots))


def audience_sections(audience):
    """Section keys received by an audience, in card order."""
    return _core.audience_sections(audience)

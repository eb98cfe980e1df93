"""Exact sums-of-squares length certificates over Q.

Certificates are passed around as dicts with the JSON layout used by the
``sosq`` command-line tool.
"""

import json

from . import _sosq
from ._sosq import (
    SosqError,
    fourth_power_obstruction,
    normalize,
    q_length,
    q_sos_witness,
    rational_roots,
    square_test,
)

__all__ = [
    "SosqError",
    "certify",
    "clear",
    "descend",
    "fourth_power_obstruction",
    "gram",
    "normalize",
    "q_length",
    "q_sos_witness",
    "rational_roots",
    "scale",
    "square_test",
    "verify",
]


def _dump(cert):
    return cert if isinstance(cert, str) else json.dumps(cert)


def verify(cert):
    return _sosq.verify(_dump(cert))


def descend(cert, base=None):
    return json.loads(_sosq.descend(_dump(cert), base))


def clear(cert):
    return json.loads(_sosq.clear(_dump(cert)))


def scale(cert):
    return json.loads(_sosq.scale(_dump(cert)))


def gram(cert):
    return json.loads(_sosq.gram(_dump(cert)))


def certify(cert):
    return json.loads(_sosq.certify(_dump(cert)))

"""Combinatorial skeleton of Arthur packets for classical and similitude
p-adic groups.

Thin wrapper over the compiled module: parameters go in as dicts (or JSON
strings) in the documented schema, results come back as dicts.
"""

import json

try:  # installed layout: extension lives inside the package
    from . import _arthur_kit as _core
except ImportError:  # in-tree test layout: extension on sys.path
    import _arthur_kit as _core

__all__ = [
    "classify",
    "centralizer",
    "packet",
    "expand",
    "multiplicity",
    "verify",
]

def _as_text(param):
    return param if isinstance(param, str) else json.dumps(param)


def multiplicity(param, pi, eps_psi="", m_psi=1):
    """Discrete-spectrum multiplicity of the character ``pi`` (+- string)."""
    return _core.multiplicity(_as_text(param), pi, eps_psi, m_psi)


def classify(param):
    """Structural flags (good parity, tempered, discrete, elementary, DDR)."""
    return json.loads(_core.classify(_as_text(param)))


def centralizer(param):
    """Component-group data of the centralizer."""
    return json.loads(_core.centralizer(_as_text(param)))


def packet(param, level="similitude", epsilon=""):
    """Packet at the classical or similitude level.

    ``epsilon`` is a +- string and is required at level "classical".
    """
    return json.loads(_core.packet(_as_text(param), level, epsilon))


def expand(param, epsilon, block=-1):
    """Expansion in the twisted Grothendieck group.

    ``block`` selects a single one-block step; the default expands fully.
    """
    return json.loads(_core.expand(_as_text(param), epsilon, block))


def verify(param):
    """Run the internal consistency suites; True iff everything reconciles."""
    return _core.verify(_as_text(param))

"""Monte Carlo simulation of memory-assisted satellite QKD repeater chains.

Subpackages cover the deterministic layers (geometry, optics, two-qubit
state algebra), the discrete-event engine with the repeater protocols built
on top of it, rate analysis with orbit averaging, and a config-driven sweep
runner exposed through the ``maqkd`` command line tool.
"""

__version__ = "0.1.0"

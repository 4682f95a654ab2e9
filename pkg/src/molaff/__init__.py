"""molaff: molecular binding-affinity prediction and clustering toolkit.

Pipeline stages, each usable as a library module or through the ``molaff``
command line driver:

- ``ingest``     load/prune/standardize feature tables, train/val/test splits
- ``smiles``     minimal SMILES parsing and fluorocarbon structure statistics
- ``simgraph``   cosine-similarity K-minimum-edge molecular graphs
- ``gnn``        semi-supervised GraphSAGE-style regressor (numpy, manual backprop)
- ``baselines``  ridge / decision tree / MLP benchmarks with grid-search CV
- ``cluster``    Ward agglomerative clustering, validity indices, medoids, PCA
- ``synth``      synthetic fixtures for tests and demos
- ``cli``        pipeline driver and report generation

Heavy imports (numpy, matplotlib) happen inside the submodules so that
importing ``molaff`` itself stays cheap.
"""

__version__ = "0.1.0"

from molaff.errors import MolaffError

__all__ = ["MolaffError", "__version__"]

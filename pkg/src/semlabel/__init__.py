"""semlabel: precise semantic labeling of biomedical text.

Generates spelling variants for ontology terms, scans corpora for them,
quantifies the retrieval uncertainty induced by term variability and
ambiguity, and serves a validation workflow for human review.
"""

__version__ = "0.1.0"

__all__ = ["__version__"]

"""FreqBrain - frequency-enhanced self-supervised learning on functional brain graphs.

Builds correlation graphs from multivariate time series, learns joint time-domain
and frequency-domain embeddings under a domain-consistency objective, and
evaluates them with fine-tuned classification.
"""

__version__ = "0.1.0"

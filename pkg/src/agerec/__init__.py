"""Reader-age-range recommendation toolkit for French texts.

Modules:
  interval_metrics  distances between age-range intervals + footrule study
  annotation        sentence splitting, tokenization, heuristic tagging,
                    CoNLL-U ingestion, grapheme-to-phoneme rules
  corpus            JSONL corpus ingestion, segmentation, splits, synthesis
  features          the 107 expert linguistic features in 9 categories
  models            naive / Flesch-Kincaid / feed-forward / random-forest
                    age-range regressors
  analysis          evaluation reports, correlation ranking, permutation
                    importance, category ablation
  pipeline          text -> annotation -> features -> model input glue
  cli / service     batch commands and the live recommendation HTTP API
"""

from .ranges import AGE_DOMAIN, AgeRange

__version__ = "0.1.0"

__all__ = ["AGE_DOMAIN", "AgeRange", "__version__"]

"""Estimator base class shared by all six schedulers."""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .model import Scenario


class BaseScheduler(BaseEstimator):
    """Common surface: ``fit(scenario)`` then read fitted attributes.

    Every scheduler sets ``trace_`` (ExecutionTrace) and ``report_``
    (DefectReport); the metaheuristics additionally set ``best_genotype_``,
    ``history_`` and ``n_iter_``.
    """

    def fit(self, scenario: Scenario) -> "BaseScheduler":
        raise NotImplementedError

    def score(self, scenario: Scenario = None) -> float:
        """Fitness of the fitted schedule (1 at zero defect, else 1/defect)."""
        check_is_fitted(self, "report_")
        return self.report_.fitness

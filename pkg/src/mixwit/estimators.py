"""scikit-learn style wrappers.

Inputs ``X`` are batches of density matrices, shape ``(n_states, N, N)``.
The witnesses are stateless, so ``fit`` only validates inputs and records the
bipartition; they are nevertheless proper estimators (``get_params``,
``clone``, ``score``) and can be compared or grid-searched like any other.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .linalg import hermitian_eigenvalues, partial_transpose
from .sampling import EnsembleSpec, SliceSamplerConfig, sample_pure_state, sample_density_matrix
from .validation import check_density_batch, resolve_shape
from .witnesses import DEFAULT_EPS, WitnessReport, conditional_renyi, witness_report

__all__ = ["WitnessTransformer", "MixednessWitness", "NPTWitness", "EnsembleSampler"]


class _BipartiteMixin:
    def _fit_shape(self, X):
        X = check_density_batch(X)
        self.shape_ = resolve_shape(X.shape[1], self.dim_a, self.dim_b)
        self.n_dim_in_ = X.shape[1]
        return X

    def _check_input(self, X):
        check_is_fitted(self, "shape_")
        X = check_density_batch(X)
        if X.shape[1] != self.n_dim_in_:
            raise ValueError(f"fitted on {self.n_dim_in_}-dimensional states, got {X.shape[1]}")
        return X


class WitnessTransformer(_BipartiteMixin, TransformerMixin, BaseEstimator):
    """Map states to the numeric fields of their :class:`WitnessReport`.

    Parameters
    ----------
    dim_a, dim_b : int, optional
        Subsystem dimensions; a square split is inferred when both are None.
    eps : float
        Decision tolerance for the boolean verdict columns.
    features : list of str, optional
        Subset of report fields to output, in order. Defaults to all.
    """

    def __init__(self, dim_a=None, dim_b=None, eps=DEFAULT_EPS, features=None):
        self.dim_a = dim_a
        self.dim_b = dim_b
        self.eps = eps
        self.features = features

    def fit(self, X, y=None):
        self._fit_shape(X)
        names = WitnessReport.field_names()
        features = list(self.features) if self.features is not None else names
        unknown = set(features) - set(names)
        if unknown:
            raise ValueError(f"unknown features {sorted(unknown)}")
        self.feature_names_out_ = np.array(features, dtype=object)
        return self

    def transform(self, X):
        X = self._check_input(X)
        rows = []
        for rho in X:
            rep = witness_report(rho, self.shape_, self.eps).to_dict()
            rows.append([float(rep[f]) for f in self.feature_names_out_])
        return np.array(rows)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "feature_names_out_")
        return self.feature_names_out_.copy()


class MixednessWitness(_BipartiteMixin, ClassifierMixin, BaseEstimator):
    """Classify states as entangled when S_order(A|B) or S_order(B|A) < -eps.

    ``decision_function`` returns minus the smaller conditional entropy, so
    positive scores mean the mixedness criterion is violated.
    """

    def __init__(self, order=2.0, dim_a=None, dim_b=None, eps=DEFAULT_EPS):
        self.order = order
        self.dim_a = dim_a
        self.dim_b = dim_b
        self.eps = eps

    def fit(self, X, y=None):
        self._fit_shape(X)
        self.classes_ = np.array([False, True])
        return self

    def decision_function(self, X):
        X = self._check_input(X)
        return np.array(
            [
                -min(conditional_renyi(rho, self.shape_, self.order, side) for side in "AB")
                for rho in X
            ]
        )

    def predict(self, X):
        return self.decision_function(X) > self.eps


class NPTWitness(_BipartiteMixin, ClassifierMixin, BaseEstimator):
    """Classify states as entangled when the partial transpose has an
    eigenvalue below ``-eps``; the score is minus that smallest eigenvalue."""

    def __init__(self, dim_a=None, dim_b=None, eps=DEFAULT_EPS):
        self.dim_a = dim_a
        self.dim_b = dim_b
        self.eps = eps

    def fit(self, X, y=None):
        self._fit_shape(X)
        self.classes_ = np.array([False, True])
        return self

    def decision_function(self, X):
        X = self._check_input(X)
        return np.array(
            [-hermitian_eigenvalues(partial_transpose(rho, self.shape_))[-1] for rho in X]
        )

    def predict(self, X):
        return self.decision_function(X) > self.eps


class EnsembleSampler(BaseEstimator):
    """Parameterised random-state generator with the estimator ``get_params`` API.

    ``sample(n, start=0)`` returns states for sample indices
    ``start .. start + n - 1``; index ``i`` is identical across calls.
    """

    def __init__(
        self,
        kind="UE",
        marginal_dim=2,
        master_seed=0,
        power=None,
        slice_mode="auto",
        burn_in=1000,
        thinning=50,
    ):
        self.kind = kind
        self.marginal_dim = marginal_dim
        self.master_seed = master_seed
        self.power = power
        self.slice_mode = slice_mode
        self.burn_in = burn_in
        self.thinning = thinning

    def sample(self, n_samples: int, start: int = 0) -> np.ndarray:
        spec = EnsembleSpec(self.kind, self.marginal_dim, max(n_samples, 1), self.master_seed, self.power)
        cfg = SliceSamplerConfig(mode=self.slice_mode, burn_in=self.burn_in, thinning=self.thinning)
        d = self.marginal_dim
        if spec.kind.value == "pure":
            draw = lambda i: sample_pure_state((d, d), spec.key(i))  # noqa: E731
        else:
            draw = lambda i: sample_density_matrix(spec, (d, d), cfg, spec.key(i))  # noqa: E731
        return np.stack([draw(i) for i in range(start, start + n_samples)])

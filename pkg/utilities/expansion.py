import math

import numpy as np

from utilities.constants import *
from utilities.errors import InvalidArgumentError, ExpansionError
from utilities.rando import make_rng
from utilities.inferencing import predict_nodes

from problems.instances import as_stochastic, restrict_to_subset

# expand_horizon
def expand_horizon(model, instance, mode=None):
    """
    ----------
    - Applies the trained recurrence over every stage of a (possibly longer) instance
    - Weights are per step, so no parameter changes; identical to a plain forward pass
    ----------
    """

    return predict_nodes(model, instance, mode=mode)

# ExpansionState
class ExpansionState:
    """
    ----------
    - Running sums of per-subset predictions (n_items, n_nodes) and per-item counts
    ----------
    """

    def __init__(self, n_items, n_nodes, delta, model_items, aggregation):
        self.sums = np.zeros((n_items, n_nodes))
        self.counts = np.zeros(n_items, dtype=np.int64)
        self.delta = delta
        self.model_items = model_items
        self.aggregation = aggregation
        self.subsets = []

    # uncovered
    def uncovered(self):
        return np.flatnonzero(self.counts <= self.delta)

    # accumulate
    def accumulate(self, subset, probs):
        if(self.aggregation == AGG_VOTE):
            probs = (probs >= DECISION_THRESHOLD).astype(np.float64)

        self.sums[subset] += probs
        self.counts[subset] += 1
        self.subsets.append(list(subset))

    # aggregate
    def aggregate(self):
        return self.sums / self.counts[:, None]

# least_covered_sampler
def least_covered_sampler(seed):
    """
    ----------
    - Subset sampler that draws a uniform permutation, stable-sorts it by current count and
      takes the first model_items items, returned in increasing id order
    - Every uncovered item is picked before any covered one, so coverage always progresses
    ----------
    """

    rng = make_rng(seed)

    def sample(state):
        perm = rng.permutation(state.counts.shape[0])
        order = perm[np.argsort(state.counts[perm], kind="stable")]
        return np.sort(order[:state.model_items])

    return sample

# itemwise_expand
def itemwise_expand(model, instance, delta=DELTA_DEF, seed=SEED_DEF, aggregation=AGG_MEAN, sampler=None, mode=None, verbose=False):
    """
    ----------
    - Predicts an instance with more items than the model was trained on
    - Repeats until every item has more than delta predictions: sample a subset of the
      model's item count, restrict the instance to it (capacity rescaled by the subset's share),
      run the model and accumulate the subset's predictions
    - Aggregation: mean of raw probabilities (default) or vote, the share of thresholded predictions
    - sampler(state) -> ordered item ids; the instance is restricted in that order
    - Returns (n_items, n_nodes) aggregated probabilities
    ----------
    """

    st = as_stochastic(instance)
    n_items = st.n_items
    model_items = model.config.n_items

    if(model_items > n_items):
        raise InvalidArgumentError("itemwise_expand: model expects %d items, instance has only %d" % (model_items, n_items))
    if(delta < 0):
        raise InvalidArgumentError("itemwise_expand: delta must be nonnegative")
    if(aggregation not in ALL_AGGREGATIONS):
        raise InvalidArgumentError("itemwise_expand: unknown aggregation %r" % aggregation)

    if(sampler is None):
        sampler = least_covered_sampler(seed)

    state = ExpansionState(n_items, st.tree.n_nodes, delta, model_items, aggregation)
    guard = EXPAND_GUARD_COEF * math.ceil(n_items / model_items) * (delta + 1)

    iteration = 0
    while(state.uncovered().size > 0):
        if(iteration >= guard):
            raise ExpansionError("itemwise_expand: items %s still uncovered after %d subsets" % (state.uncovered().tolist(), guard))

        subset = np.asarray(sampler(state), dtype=np.int64)
        if(subset.shape != (model_items,)):
            raise InvalidArgumentError("itemwise_expand: sampler returned %d items, expected %d" % (subset.size, model_items))

        restricted = restrict_to_subset(instance, subset)
        probs = predict_nodes(model, restricted, mode=mode)
        state.accumulate(subset, probs)

        iteration += 1
        if(verbose):
            print("Subsets: %d  Uncovered items: %d" % (iteration, state.uncovered().size), end=CARRIAGE_RETURN)

    if(verbose):
        print("")

    return state.aggregate()

# predict_any
def predict_any(model, instance, delta=DELTA_DEF, seed=SEED_DEF, aggregation=AGG_MEAN, mode=None):
    """
    ----------
    - Node probabilities for an instance of any item count >= the model's
    ----------
    """

    if(as_stochastic(instance).n_items == model.config.n_items):
        return expand_horizon(model, instance, mode=mode)

    return itemwise_expand(model, instance, delta=delta, seed=seed, aggregation=aggregation, mode=mode)

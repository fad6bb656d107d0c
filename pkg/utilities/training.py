import math
import time
import traceback

import torch

from utilities.constants import *
from utilities.errors import TrainingDivergedError, InvalidArgumentError
from utilities.rando import seed_torch
from utilities.loaders import BatchLoader
from utilities.optimizer import build_optimizer, get_optimizer_lr
from utilities.logging import log_train_epoch, log_train_epoch_tb

# bce_loss
def bce_loss(probs, targets):
    """
    ----------
    - Mean binary cross-entropy over every entry, log arguments clamped at LOG_CLAMP
    ----------
    """

    if(probs.shape != targets.shape):
        raise InvalidArgumentError("bce_loss: probabilities %s and targets %s differ in shape" % (tuple(probs.shape), tuple(targets.shape)))

    log_p = torch.log(torch.clamp(probs, min=LOG_CLAMP))
    log_q = torch.log(torch.clamp(1.0 - probs, min=LOG_CLAMP))

    return -(targets * log_p + (1.0 - targets) * log_q).mean()

# sample_loss
def sample_loss(model, inp, mode=None):
    """
    ----------
    - Teacher-forced loss of one DecisionInput, over decoding units
      (tree nodes in NEDA mode, so each bundle counts once per stage)
    ----------
    """

    if(inp.targets is None):
        raise InvalidArgumentError("sample_loss: input %s has no targets" % inp.instance_id)

    probs, mode = model.forward_units(inp, mode=mode, teacher_forcing=True)
    return bce_loss(probs, model.unit_targets(inp, mode))

# batch_loss
def batch_loss(model, batch, mode=None):
    total = 0.0
    for inp in batch:
        total = total + sample_loss(model, inp, mode=mode)

    return total / len(batch)

# backward
def backward(model, batch, mode=None):
    """
    ----------
    - Backpropagation through time for a batch of DecisionInputs
    - Returns (loss, {parameter name: gradient tensor})
    ----------
    """

    model.zero_grad()
    loss = batch_loss(model, batch, mode=mode)
    loss.backward()

    grads = {}
    for name, param in model.named_parameters():
        if(param.grad is None):
            grads[name] = torch.zeros_like(param)
        else:
            grads[name] = param.grad.detach().clone()

    return loss.item(), grads

# gradient_check
def gradient_check(model, batch, step=GRAD_CHECK_STEP, mode=None):
    """
    ----------
    - Compares autograd gradients with central finite differences, entry by entry
    - Relative error is |analytic - numeric| / max(GRAD_CHECK_DENOM_MIN, |analytic|)
    - Returns {parameter name: worst relative error}
    ----------
    """

    _, grads = backward(model, batch, mode=mode)

    worst = {}
    with torch.no_grad():
        for name, param in model.named_parameters():
            flat = param.view(-1)
            analytic = grads[name].view(-1)
            err = 0.0

            for k in range(flat.numel()):
                orig = flat[k].item()

                flat[k] = orig + step
                loss_plus = batch_loss(model, batch, mode=mode).item()
                flat[k] = orig - step
                loss_minus = batch_loss(model, batch, mode=mode).item()
                flat[k] = orig

                numeric = (loss_plus - loss_minus) / (2.0 * step)
                g = analytic[k].item()
                err = max(err, abs(g - numeric) / max(GRAD_CHECK_DENOM_MIN, abs(g)))

            worst[name] = err

    return worst

# train_batch_batchloader
def train_batch_batchloader(model, loader, optim, mode=None):
    """
    ----------
    - Trains one batch from the BatchLoader: forward, BPTT and one Adam step
    - Raises TrainingDivergedError on a non-finite loss
    - Returns the batch loss
    ----------
    """

    model.train()
    batch = loader.next_batch()

    optim.zero_grad()
    try:
        loss = batch_loss(model, batch, mode=mode)
    except InvalidArgumentError:
        raise
    except Exception:
        ids = ", ".join([str(inp.instance_id) for inp in batch])
        print("")
        print("----- Exception occured on instance ids:", ids, "-----")
        traceback.print_exc()
        raise

    value = loss.item()
    if(not math.isfinite(value)):
        ids = ", ".join([str(inp.instance_id) for inp in batch])
        raise TrainingDivergedError("Non-finite loss %r on instance ids: %s" % (value, ids))

    loss.backward()
    optim.step()

    return value

# train
def train(model, dataset, epochs=None, seed=None, mode=None, epoch_log=None, tb_summary=None, verbose=True):
    """
    ----------
    - Trains model on a DecisionDataset, one instance (all of its scenarios) per Adam step
    - Shuffle order is seeded, so training replays exactly for a fixed seed
    - Logs the mean epoch loss to csv (epoch_log) and Tensorboard (tb_summary) when given
    - Returns the list of mean epoch losses
    ----------
    """

    config = model.config
    if(epochs is None):
        epochs = config.epochs
    if(seed is None):
        seed = config.seed
    if(len(dataset) == 0):
        raise InvalidArgumentError("train: dataset is empty")

    generator = seed_torch(seed)
    loader = BatchLoader(dataset, 1, shuffle=True, generator=generator)
    optim = build_optimizer(model)
    lr = get_optimizer_lr(optim)

    history = []
    for epoch in range(epochs):
        before = time.time()

        total = 0.0
        for b in range(len(loader)):
            total += train_batch_batchloader(model, loader, optim, mode=mode)
            if(verbose):
                print("Batches: %d / %d" % (b + 1, len(loader)), end=CARRIAGE_RETURN)

        mean_loss = total / len(loader)
        history.append(mean_loss)
        model.epochs_trained += 1

        if(verbose):
            print("")
            print("Epoch: %d / %d  Loss: %.6f  Time taken: %.2f seconds" % (epoch + 1, epochs, mean_loss, time.time() - before))

        if(epoch_log is not None):
            log_train_epoch(epoch_log, model.epochs_trained, lr, mean_loss)
        if(tb_summary is not None):
            log_train_epoch_tb(tb_summary, model.epochs_trained, lr, mean_loss)

    return history

from torch.optim import Adam

from utilities.constants import *

# build_optimizer
def build_optimizer(model, lr=None):
    """
    ----------
    - Adam over every model parameter, learn rate from the model config unless given
    ----------
    """

    if(lr is None):
        lr = model.config.lr

    return Adam(model.parameters(), lr=lr)

# get_optimizer_lr
def get_optimizer_lr(optimizer):
    """
    ----------
    - Given an optimizer, returns the learn rate of its first param group
    ----------
    """

    for param_group in optimizer.param_groups:
        return param_group["lr"]

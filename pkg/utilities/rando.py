import numpy as np
import torch

# make_rng
def make_rng(seed):
    """
    ----------
    - Gets a numpy Generator for the given integer seed
    - Every random draw in generators, trees and samplers goes through one of these
    ----------
    """

    return np.random.default_rng(int(seed))

# derive_seed
def derive_seed(seed_base, index):
    """
    ----------
    - Per-item seed for independent work units (instance i gets seed_base + i)
    ----------
    """

    return int(seed_base) + int(index)

# seed_torch
def seed_torch(seed):
    """
    ----------
    - Seeds torch and returns a torch Generator for seeded shuffling
    ----------
    """

    torch.manual_seed(int(seed))
    generator = torch.Generator()
    generator.manual_seed(int(seed))

    return generator

# uniform_int
def uniform_int(rng, bounds, size):
    lo, hi = bounds
    return rng.integers(int(lo), int(hi) + 1, size=size).astype(np.float64)

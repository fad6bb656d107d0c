import os
import sys

import numpy as np
import pytest

# The code base is imported by directory, like the entry scripts do
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if(ROOT not in sys.path):
    sys.path.insert(0, ROOT)

from problems.instances import MclspInstance, MsmkInstance


@pytest.fixture
def tiny_mclsp():
    # d=1, T=2: demand (2,3), capacity 5 per stage, setup 10, production 1, holding 1
    return MclspInstance(
        demand=[[2.0, 3.0]], capacity=[5.0, 5.0], setup_cost=[[10.0, 10.0]],
        production_cost=[[1.0, 1.0]], holding_cost=[[1.0, 1.0]],
    )


@pytest.fixture
def tiny_knapsack():
    # One stage, values (6,10,12), weights (1,2,3), capacity 5
    return MsmkInstance(value=[[6.0], [10.0], [12.0]], weight=[[1.0], [2.0], [3.0]], capacity=[5.0])

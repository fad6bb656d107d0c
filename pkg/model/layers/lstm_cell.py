import math

import torch
import torch.nn as nn

from utilities.constants import *

# lstm_cell
def lstm_cell(x, h_prev, c_prev, weights):
    """
    ----------
    - One LSTM step on a batch: x (B, in), h_prev and c_prev (B, H)
    - weights maps W_g (H, in), U_g (H, H) and b_g (H,) for each gate g in f, i, c, o
    - Returns (h, c)
    ----------
    """

    def gate(g):
        return x @ weights["W_" + g].T + h_prev @ weights["U_" + g].T + weights["b_" + g]

    f = torch.sigmoid(gate("f"))
    i = torch.sigmoid(gate("i"))
    c_tilde = torch.tanh(gate("c"))
    o = torch.sigmoid(gate("o"))

    c = f * c_prev + i * c_tilde
    h = o * torch.tanh(c)

    return h, c

# LstmCell
class LstmCell(nn.Module):
    """
    ----------
    - LSTM cell with explicit per-gate input (W), recurrent (U) and bias (b) parameters
    - Initialized uniform(-1/sqrt(H), 1/sqrt(H)) from the given generator, forget bias shifted by +1
    ----------
    """

    # __init__
    def __init__(self, input_width, hidden, generator=None):
        super(LstmCell, self).__init__()

        self.input_width = input_width
        self.hidden = hidden

        bound = 1.0 / math.sqrt(hidden)
        for g in LSTM_GATES:
            W = torch.empty((hidden, input_width), dtype=torch.float64)
            U = torch.empty((hidden, hidden), dtype=torch.float64)
            b = torch.empty((hidden,), dtype=torch.float64)
            for p in (W, U, b):
                p.uniform_(-bound, bound, generator=generator)

            if(g == "f"):
                b += FORGET_BIAS_INIT

            setattr(self, "W_" + g, nn.Parameter(W))
            setattr(self, "U_" + g, nn.Parameter(U))
            setattr(self, "b_" + g, nn.Parameter(b))

    # weights
    def weights(self):
        return {name: getattr(self, name) for g in LSTM_GATES for name in ("W_" + g, "U_" + g, "b_" + g)}

    # forward
    def forward(self, x, h_prev, c_prev):
        return lstm_cell(x, h_prev, c_prev, self.weights())

    # to_string
    def to_string(self):
        return "LSTM: in: %d  hidden: %d" % (self.input_width, self.hidden)

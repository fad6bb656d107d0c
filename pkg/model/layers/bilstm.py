import torch
import torch.nn as nn

from utilities.constants import *

from .lstm_cell import LstmCell

# BiLstmEncoder
class BiLstmEncoder(nn.Module):
    """
    ----------
    - Bidirectional LSTM over per-scenario stage sequences
    - Input (S, T, F), output (S, T, 2H) with [forward; backward] states per stage
    ----------
    """

    # __init__
    def __init__(self, input_width, hidden, generator=None):
        super(BiLstmEncoder, self).__init__()

        self.input_width = input_width
        self.hidden = hidden

        self.fwd = LstmCell(input_width, hidden, generator=generator)
        self.bwd = LstmCell(input_width, hidden, generator=generator)

    # _run
    def _run(self, cell, seq, stages):
        n_scen = seq.shape[SEQ_SCEN_DIM]
        h = seq.new_zeros((n_scen, self.hidden))
        c = seq.new_zeros((n_scen, self.hidden))

        out = [None] * seq.shape[SEQ_STAGE_DIM]
        for t in stages:
            h, c = cell(seq[:, t], h, c)
            out[t] = h

        return torch.stack(out, dim=SEQ_STAGE_DIM)

    # forward
    def forward(self, seq):
        T = seq.shape[SEQ_STAGE_DIM]

        h_fwd = self._run(self.fwd, seq, range(T))
        h_bwd = self._run(self.bwd, seq, range(T - 1, -1, -1))

        return torch.cat((h_fwd, h_bwd), dim=SEQ_FEAT_DIM)

    # to_string
    def to_string(self):
        return "BILSTM: in: %d  hidden: %d  out: %d" % (self.input_width, self.hidden, 2 * self.hidden)

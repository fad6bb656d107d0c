import math
import sys

import torch
import torch.nn as nn

from utilities.constants import *
from utilities.errors import InvalidArgumentError

from .model_config import SeqModelConfig
from .layers.bilstm import BiLstmEncoder
from .layers.lstm_cell import LstmCell
from .layers.attention import GeneralAttention
from .layers.neda import neda_average, to_scenarios

# _UnitLayout
class _UnitLayout:
    """
    ----------
    - Decoding units grouped by stage
    - NEDA: one unit per tree node, so bundle members share every computation
    - Deterministic: one unit per (scenario, stage), unit id = s * T + t
    ----------
    """

    def __init__(self, stage_units, stage_keys, stage_parent_pos):
        self.stage_units = stage_units
        self.stage_keys = stage_keys
        self.stage_parent_pos = stage_parent_pos

        order = torch.cat(stage_units)
        self.inverse = torch.empty_like(order)
        self.inverse[order] = torch.arange(order.numel())

    @staticmethod
    def from_tree(inp):
        return _UnitLayout(inp.stage_nodes, inp.stage_keys, inp.stage_parent_pos)

    @staticmethod
    def from_scenarios(n_scen, horizon):
        base = torch.arange(n_scen, dtype=torch.long) * horizon
        units, keys, parent_pos = [], [], []
        for t in range(horizon):
            units.append(base + t)
            keys.append(base[:, None] + torch.arange(t + 1, dtype=torch.long)[None, :])
            parent_pos.append(None if t == 0 else torch.arange(n_scen, dtype=torch.long))

        return _UnitLayout(units, keys, parent_pos)

# SeqModel
class SeqModel(nn.Module):
    """
    ----------
    - BiLSTM encoder, scenario-bundle averaging and an LSTM decoder with causal general attention
    - Produces per-stage, per-item probabilities of the binary decisions
    - Decoder input at a stage: previous decision estimate and the (averaged) encoder state
    - Teacher forcing when targets are given, thresholded own predictions otherwise
    - All parameters are float64; weights are per step so any horizon is accepted
    ----------
    """

    # __init__
    def __init__(self, config, scaler=None, generator=None):
        super(SeqModel, self).__init__()

        self.config = config
        self.scaler = scaler
        self.version = SCENOPT_VERSION
        self.epochs_trained = 0

        if(generator is None):
            generator = torch.Generator()
            generator.manual_seed(config.seed)

        H = config.hidden
        self.encoder = BiLstmEncoder(config.input_width, H, generator=generator)
        self.decoder = LstmCell(config.decoder_width, H, generator=generator)
        self.attention = GeneralAttention(H, 2 * H, generator=generator)

        self.out = nn.Linear(3 * H, config.n_items, dtype=torch.float64)
        bound = 1.0 / math.sqrt(H)
        with torch.no_grad():
            self.out.weight.uniform_(-bound, bound, generator=generator)
            self.out.bias.uniform_(-bound, bound, generator=generator)

    # check_input
    def check_input(self, inp):
        if(inp.input_width != self.config.input_width):
            raise InvalidArgumentError("SeqModel: feature width %d does not match model input width %d" % (inp.input_width, self.config.input_width))
        if(inp.kind != self.config.kind):
            raise InvalidArgumentError("SeqModel: model is for %s instances, got %s" % (self.config.kind, inp.kind))

        return

    # forward_units
    def forward_units(self, inp, mode=None, teacher_forcing=None):
        """
        ----------
        - Runs the model on a DecisionInput and returns (unit probabilities (U, d), mode)
        - NEDA units are tree nodes, deterministic units are (scenario, stage) pairs
        - teacher_forcing defaults to True when the input carries targets
        ----------
        """

        self.check_input(inp)
        if(mode is None):
            mode = self.config.mode
        if(mode not in ALL_MODES):
            raise InvalidArgumentError("SeqModel: unknown mode %r" % mode)
        if(teacher_forcing is None):
            teacher_forcing = inp.targets is not None

        enc = self.encoder(inp.features)

        if(mode == MODE_NEDA):
            unit_states = neda_average(enc, inp.paths, inp.n_nodes)
            layout = _UnitLayout.from_tree(inp)
            targets = inp.targets
        else:
            S, T = inp.paths.shape
            unit_states = enc.reshape(S * T, -1)
            layout = _UnitLayout.from_scenarios(S, T)
            targets = None if inp.targets is None else inp.targets[inp.paths].reshape(S * T, -1)

        if(teacher_forcing and (targets is None)):
            raise InvalidArgumentError("SeqModel: teacher forcing needs targets")

        probs = self._decode(unit_states, layout, targets if teacher_forcing else None)
        return probs, mode

    # _decode
    def _decode(self, unit_states, layout, targets):
        d = self.config.n_items
        H = self.config.hidden

        stage_probs = []
        h = c = p = None
        for t, units in enumerate(layout.stage_units):
            n_units = units.numel()
            if(t == 0):
                h_prev = unit_states.new_zeros((n_units, H))
                c_prev = unit_states.new_zeros((n_units, H))
                x_prev = unit_states.new_zeros((n_units, d))
            else:
                pos = layout.stage_parent_pos[t]
                h_prev = h[pos]
                c_prev = c[pos]
                if(targets is not None):
                    x_prev = targets[layout.stage_units[t - 1][pos]]
                else:
                    x_prev = (p[pos] >= DECISION_THRESHOLD).to(unit_states.dtype).detach()

            dec_in = torch.cat((x_prev, unit_states[units]), dim=1)
            h, c = self.decoder(dec_in, h_prev, c_prev)

            # Causal keys: averaged encoder states of this unit's stages 1..t
            keys = unit_states[layout.stage_keys[t]]
            context, _ = self.attention(h, keys)

            p = torch.sigmoid(self.out(torch.cat((h, context), dim=1)))
            stage_probs.append(p)

        return torch.cat(stage_probs, dim=0)[layout.inverse]

    # forward
    def forward(self, inp, mode=None, teacher_forcing=None):
        """
        ----------
        - Per-scenario, per-stage, per-item probabilities of shape (S, T, d)
        - In NEDA mode scenarios sharing a node get that node's prediction, bit for bit
        ----------
        """

        probs, mode = self.forward_units(inp, mode=mode, teacher_forcing=teacher_forcing)
        if(mode == MODE_NEDA):
            return to_scenarios(probs, inp.paths)

        S, T = inp.paths.shape
        return probs.reshape(S, T, -1)

    # unit_targets
    def unit_targets(self, inp, mode=None):
        if(mode is None):
            mode = self.config.mode
        if(mode == MODE_NEDA):
            return inp.targets

        S, T = inp.paths.shape
        return inp.targets[inp.paths].reshape(S * T, -1)

    # print_network
    def print_network(self, f=sys.stdout):
        print(SEPARATOR, file=f)
        print("START NETWORK PRINT:", file=f)
        print("", file=f)

        print(self.config.to_string(), file=f)
        print("", file=f)

        print("   ", 0, ":::", self.encoder.to_string(), file=f)
        print("   ", 1, ":::", "DECODER " + self.decoder.to_string(), file=f)
        print("   ", 2, ":::", self.attention.to_string(), file=f)
        print("   ", 3, ":::", "OUT: in: %d  items: %d  activ: sigmoid" % (self.out.in_features, self.out.out_features), file=f)

        print("", file=f)
        print("END NETWORK PRINT:", file=f)
        print(SEPARATOR, file=f)
        print("", file=f)

        return

# build_model
def build_model(config, scaler=None):
    """
    ----------
    - Seeded construction of a SeqModel from its config
    ----------
    """

    if(not isinstance(config, SeqModelConfig)):
        raise InvalidArgumentError("build_model: expected a SeqModelConfig")

    return SeqModel(config, scaler=scaler)

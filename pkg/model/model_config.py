from utilities.constants import *
from utilities.errors import InvalidArgumentError

# feature_width
def feature_width(kind, n_items):
    """
    ----------
    - Encoder input width for an instance kind and item count
    - MCLSP: 6 features per item plus capacity, MSMK: 4 per item plus capacity
    ----------
    """

    if(kind == KIND_MCLSP):
        return MCLSP_ITEM_FEATURES * n_items + 1
    elif(kind == KIND_MSMK):
        return MSMK_ITEM_FEATURES * n_items + 1

    raise InvalidArgumentError("feature_width: unknown instance kind %r" % kind)

class SeqModelConfig:
    def __init__(self, kind=KIND_MCLSP, n_items=MCLSP_N_ITEMS_DEF, hidden=HIDDEN_DEF, mode=MODE_NEDA,
        lr=LR_DEF, epochs=EPOCHS_DEF, seed=SEED_DEF):

        if(kind not in BASE_KINDS):
            raise InvalidArgumentError("SeqModelConfig: kind must be one of %s" % list(BASE_KINDS))
        if(mode not in ALL_MODES):
            raise InvalidArgumentError("SeqModelConfig: mode must be one of %s" % list(ALL_MODES))
        if((int(n_items) < 1) or (int(hidden) < 1)):
            raise InvalidArgumentError("SeqModelConfig: n_items and hidden must be positive")
        if(lr <= 0 or int(epochs) < 0):
            raise InvalidArgumentError("SeqModelConfig: lr must be positive and epochs nonnegative")

        self.kind = kind
        self.n_items = int(n_items)
        self.hidden = int(hidden)
        self.mode = mode
        self.lr = float(lr)
        self.epochs = int(epochs)
        self.seed = int(seed)

    @property
    def input_width(self):
        return feature_width(self.kind, self.n_items)

    @property
    def decoder_width(self):
        # previous decision estimate plus the encoder state of the stage
        return self.n_items + 2 * self.hidden

    def to_record(self):
        return {
            "kind": self.kind, "n_items": self.n_items, "hidden": self.hidden, "mode": self.mode,
            "lr": self.lr, "epochs": self.epochs, "seed": self.seed,
        }

    @staticmethod
    def from_record(record):
        return SeqModelConfig(**record)

    def to_string(self):
        return "SEQMODEL: kind: %s  items: %d  input: %d  hidden: %d  mode: %s\n" \
               "          lr: %g  epochs: %d  seed: %d" % \
               (self.kind, self.n_items, self.input_width, self.hidden, self.mode,
                self.lr, self.epochs, self.seed)

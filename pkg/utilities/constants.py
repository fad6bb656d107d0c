import math

##### VERSION #####
SCENOPT_VERSION = "1.0.0"
CHECKPOINT_VERSION = 1


##### INSTANCE KINDS #####
KIND_MCLSP = "mclsp"
KIND_MSMK = "msmk"
KIND_STOCH = "stoch"
BASE_KINDS = (KIND_MCLSP, KIND_MSMK)


##### SCENARIO TREE CONSTANTS #####
PROB_TOL = 1e-9 # Children probabilities must sum to 1 within this
ROOT_STAGE = 1 # Stages are 1-based, the root lives at stage 1
NO_PARENT = -1 # Parent id written for the root node

# Multiplicative realization levels drawn per branch (low, mid, high)
STOCH_LEVELS_DEF = (0.8, 1.0, 1.2)
STOCH_BRANCHING_DEF = (2, 2)


##### MCLSP GENERATOR DEFAULTS #####
MCLSP_DEMAND_DEF = (1, 20)
MCLSP_SETUP_DEF = (20, 100)
MCLSP_PROD_DEF = (1, 5)
MCLSP_HOLD_DEF = (1, 3)
MCLSP_INIT_INV_DEF = (0, 0)
MCLSP_UTILIZATION_DEF = 0.6 # Target utilization of mean stage demand
MCLSP_MAX_CAPACITY_DEF = None # No cap on the repaired capacity
MCLSP_N_ITEMS_DEF = 3
MCLSP_HORIZON_DEF = 10


##### MSMK GENERATOR DEFAULTS #####
MSMK_VALUE_DEF = (10, 100)
MSMK_WEIGHT_DEF = (1, 30)
MSMK_TIGHTNESS_DEF = 0.25
MSMK_N_ITEMS_DEF = 4
MSMK_HORIZON_DEF = 4

GENERATION_MAX_RETRIES = 20


##### SOLVER CONSTANTS #####
INTEGRALITY_TOL = 1e-6
FEASIBILITY_TOL = 1e-6
OBJECTIVE_TOL = 1e-6 # Relative, scaled by max(1, |objective|)
PIVOT_TOL = 1e-9
PRUNE_TOL = 1e-9

ORACLE_MAX_BINARIES = 20
ORACLE_CHUNK = 4096

SENSE_LE = "<="
SENSE_GE = ">="
SENSE_EQ = "="
ALL_SENSES = (SENSE_LE, SENSE_GE, SENSE_EQ)

STATUS_OPTIMAL = "optimal"
STATUS_FEASIBLE = "feasible"
STATUS_INFEASIBLE = "infeasible"
STATUS_TIME_LIMIT = "time-limit"
STATUS_UNBOUNDED = "unbounded"

TIME_LIMIT_DEF = 600.0 # Exact d=3, T=10 lot-sizing solves can run past a minute
INF = math.inf

# Variable blocks of the extensive form
VAR_SETUP = "y"
VAR_PRODUCTION = "x"
VAR_INVENTORY = "I"
VAR_SELECT = "z"


##### SEQUENCE MODEL CONSTANTS #####
HIDDEN_DEF = 32
LR_DEF = 1e-3
EPOCHS_DEF = 200
SEED_DEF = 0
FORGET_BIAS_INIT = 1.0
DECISION_THRESHOLD = 0.5
LOG_CLAMP = 1e-12
GRAD_CHECK_STEP = 1e-5
GRAD_CHECK_RTOL = 1e-4
GRAD_CHECK_DENOM_MIN = 1e-8

MODE_NEDA = "neda"
MODE_DETERMINISTIC = "deterministic"
ALL_MODES = (MODE_NEDA, MODE_DETERMINISTIC)

# Tensor dims
SEQ_SCEN_DIM = 0
SEQ_STAGE_DIM = 1
SEQ_FEAT_DIM = 2

# Encoder features per item (the +1 is the per-item capacity share)
MCLSP_ITEM_FEATURES = 6
MSMK_ITEM_FEATURES = 4

# LSTM gate order used for names and checkpoints
LSTM_GATES = ("f", "i", "c", "o")


##### EXPANSION CONSTANTS #####
DELTA_DEF = 2
EXPAND_GUARD_COEF = 50
AGG_MEAN = "mean"
AGG_VOTE = "vote"
ALL_AGGREGATIONS = (AGG_MEAN, AGG_VOTE)


##### PIPELINE CONSTANTS #####
P_FIX_DEF = 0.9
PIPE_FIX = "fix"
PIPE_WARM = "warm-start"
PIPE_FIX_WARM = "fix-then-warm-start"
ALL_PIPE_MODES = (PIPE_FIX, PIPE_WARM, PIPE_FIX_WARM)
UNFIX_BUDGET_DEF = 1000
FALLBACK_ROUNDS = 3


##### CLI / RUN CONFIG #####
ENV_SEED = "SCENOPT_SEED"
EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3

WORKDIR_DEF = "./results/default"
MANIFEST_NAME = "MANIFEST.json"
INFO_NAME = "info.txt"

DIR_INSTANCES = "instances"
DIR_SOLUTIONS = "solutions"
DIR_CHECKPOINTS = "checkpoints"
DIR_PREDICTIONS = "predictions"
DIR_METRICS = "metrics"
DIR_CONFIGS = "configs"
DIR_TENSORBOARD = "tensorboard"

CHECKPOINT_NAME = "model.jsonl"
TRAIN_LOG_NAME = "train_log.csv"
SET_NAME_DEF = "train"


##### MISC #####
SEPARATOR = "========================="
CARRIAGE_RETURN = "\r"

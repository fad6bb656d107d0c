import argparse

from utilities.constants import *

# Every option defaults to None so resolve_config can tell given flags from defaults

# _base_parser
def _base_parser(description):
    """
    ----------
    - Parser with the options every command shares (-config, -workdir, -seed, -set)
    ----------
    """

    parser = argparse.ArgumentParser(description=description)

    parser.add_argument("-config", "--config", type=str, default=None, help="Flat json file with run parameters (flags override it)")
    parser.add_argument("-workdir", "--workdir", type=str, default=None, help="Root folder of every artifact. Defaults to %s" % WORKDIR_DEF)
    parser.add_argument("-seed", "--seed", type=int, default=None, help="Random seed (overrides the %s environment variable)" % ENV_SEED)
    parser.add_argument("-set", "--set", type=str, default=None, help="Name of the instance set. Defaults to %s" % SET_NAME_DEF)

    return parser

# parse_generate_args
def parse_generate_args(argv=None):
    """
    ----------
    - Argparse arguments for generate.py
    ----------
    """

    parser = _base_parser("Generates an instance set")

    parser.add_argument("-kind", "--kind", type=str, default=None, choices=BASE_KINDS, help="Instance family")
    parser.add_argument("-n", "--n", type=int, default=None, help="Number of instances")
    parser.add_argument("-n_items", "--n-items", dest="n_items", type=int, default=None, help="Items per instance (default depends on kind)")
    parser.add_argument("-horizon", "--horizon", type=int, default=None, help="Number of stages (default depends on kind)")
    parser.add_argument("-branching", "--branching", type=int, nargs="*", default=None, help="Children per node for stages 2..T. Empty for deterministic instances")
    parser.add_argument("-levels", "--levels", type=float, nargs="+", default=None, help="Multiplicative realization levels of the scenario tree")
    parser.add_argument("-tightness", "--tightness", type=float, default=None, help="MSMK capacity as a share of stage weight")

    parser.add_argument("-demand", "--demand", type=float, nargs=2, default=None, help="MCLSP demand range")
    parser.add_argument("-setup_cost", "--setup-cost", dest="setup_cost", type=float, nargs=2, default=None, help="MCLSP setup cost range")
    parser.add_argument("-production_cost", "--production-cost", dest="production_cost", type=float, nargs=2, default=None, help="MCLSP unit production cost range")
    parser.add_argument("-holding_cost", "--holding-cost", dest="holding_cost", type=float, nargs=2, default=None, help="MCLSP unit holding cost range")
    parser.add_argument("-initial_inventory", "--initial-inventory", dest="initial_inventory", type=float, nargs=2, default=None, help="MCLSP initial inventory range")
    parser.add_argument("-utilization", "--utilization", type=float, default=None, help="MCLSP target capacity utilization")
    parser.add_argument("-max_capacity", "--max-capacity", dest="max_capacity", type=float, default=None, help="MCLSP upper bound on repaired capacity")
    parser.add_argument("-value", "--value", type=float, nargs=2, default=None, help="MSMK item value range")
    parser.add_argument("-weight", "--weight", type=float, nargs=2, default=None, help="MSMK item weight range")

    return parser.parse_args(argv)

# parse_solve_args
def parse_solve_args(argv=None):
    """
    ----------
    - Argparse arguments for solve.py
    ----------
    """

    parser = _base_parser("Solves an instance set exactly")

    parser.add_argument("-time_limit", "--time-limit", dest="time_limit", type=float, default=None, help="Branch-and-bound time limit per instance in seconds")
    parser.add_argument("-jobs", "--jobs", type=int, default=None, help="Worker processes solving instances in parallel")
    parser.add_argument("--lp", action="store_true", default=None, help="Also writes every extensive form in LP format")

    return parser.parse_args(argv)

# parse_train_args
def parse_train_args(argv=None):
    """
    ----------
    - Argparse arguments for train.py
    ----------
    """

    parser = _base_parser("Trains the sequence model on a solved instance set")

    parser.add_argument("-epochs", "--epochs", type=int, default=None, help="Number of passes over the training set")
    parser.add_argument("-hidden", "--hidden", type=int, default=None, help="LSTM hidden width")
    parser.add_argument("-lr", "--lr", type=float, default=None, help="Adam learning rate")
    parser.add_argument("-mode", "--mode", type=str, default=None, choices=ALL_MODES, help="Decoding mode")

    parser.add_argument("--tensorboard", action="store_true", default=None, help="Report results with tensorboard")
    parser.add_argument("--print_network", "--print-network", dest="print_network", action="store_true", default=None, help="Print out each layer of the model")

    return parser.parse_args(argv)

# parse_predict_args
def parse_predict_args(argv=None):
    """
    ----------
    - Argparse arguments for predict.py
    ----------
    """

    parser = _base_parser("Predicts node decisions for an instance set")

    parser.add_argument("-mode", "--mode", type=str, default=None, choices=ALL_MODES, help="Decoding mode (defaults to the trained one)")
    parser.add_argument("-delta", "--delta", type=int, default=None, help="Item-wise expansion coverage count")
    parser.add_argument("-aggregation", "--aggregation", type=str, default=None, choices=ALL_AGGREGATIONS, help="Item-wise expansion aggregation rule")

    return parser.parse_args(argv)

# parse_evaluate_args
def parse_evaluate_args(argv=None):
    """
    ----------
    - Argparse arguments for evaluate.py
    ----------
    """

    parser = _base_parser("Runs the predict, screen and solve pipeline on an instance set")

    parser.add_argument("-p_fix", "--p-fix", dest="p_fix", type=float, default=None, help="Confidence needed to fix a binary")
    parser.add_argument("-pipeline", "--pipeline", type=str, default=None, choices=ALL_PIPE_MODES, help="How predictions enter the solver")
    parser.add_argument("--no_screening", "--no-screening", dest="screening", action="store_false", default=None, help="Skips the feasibility screen")
    parser.add_argument("-time_limit", "--time-limit", dest="time_limit", type=float, default=None, help="Solver time limit per instance in seconds")
    parser.add_argument("-unfix_budget", "--unfix-budget", dest="unfix_budget", type=int, default=None, help="Most repair actions per instance")
    parser.add_argument("-delta", "--delta", type=int, default=None, help="Item-wise expansion coverage count")
    parser.add_argument("-aggregation", "--aggregation", type=str, default=None, choices=ALL_AGGREGATIONS, help="Item-wise expansion aggregation rule")
    parser.add_argument("-jobs", "--jobs", type=int, default=None, help="Worker processes evaluating instances in parallel")

    return parser.parse_args(argv)

# parse_report_args
def parse_report_args(argv=None):
    """
    ----------
    - Argparse arguments for report.py
    ----------
    """

    parser = _base_parser("Summarizes the per-instance metrics of an evaluated set")

    return parser.parse_args(argv)

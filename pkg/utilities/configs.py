import json
import os
import traceback

from utilities.constants import *
from utilities.errors import ConfigError, MissingArtifactError, is_validation_error

# Value kinds understood by _coerce
T_INT = "int"
T_FLOAT = "float"
T_STR = "str"
T_BOOL = "bool"
T_PAIR = "pair"
T_INT_LIST = "int_list"
T_FLOAT_LIST = "float_list"

# Keys shared by every command
COMMON_KEYS = {
    "workdir": (T_STR, WORKDIR_DEF),
    "seed": (T_INT, SEED_DEF),
    "set": (T_STR, SET_NAME_DEF),
}

# key: (value kind, default); a None default means "pick by instance kind" or "off"
COMMAND_KEYS = {
    "generate": {
        "kind": (T_STR, KIND_MCLSP),
        "n": (T_INT, 10),
        "n_items": (T_INT, None),
        "horizon": (T_INT, None),
        "branching": (T_INT_LIST, None),
        "levels": (T_FLOAT_LIST, list(STOCH_LEVELS_DEF)),
        "tightness": (T_FLOAT, MSMK_TIGHTNESS_DEF),
        "demand": (T_PAIR, list(MCLSP_DEMAND_DEF)),
        "setup_cost": (T_PAIR, list(MCLSP_SETUP_DEF)),
        "production_cost": (T_PAIR, list(MCLSP_PROD_DEF)),
        "holding_cost": (T_PAIR, list(MCLSP_HOLD_DEF)),
        "initial_inventory": (T_PAIR, list(MCLSP_INIT_INV_DEF)),
        "utilization": (T_FLOAT, MCLSP_UTILIZATION_DEF),
        "max_capacity": (T_FLOAT, MCLSP_MAX_CAPACITY_DEF),
        "value": (T_PAIR, list(MSMK_VALUE_DEF)),
        "weight": (T_PAIR, list(MSMK_WEIGHT_DEF)),
    },
    "solve": {
        "time_limit": (T_FLOAT, TIME_LIMIT_DEF),
        "jobs": (T_INT, 1),
        "lp": (T_BOOL, False),
    },
    "train": {
        "epochs": (T_INT, EPOCHS_DEF),
        "hidden": (T_INT, HIDDEN_DEF),
        "lr": (T_FLOAT, LR_DEF),
        "mode": (T_STR, MODE_NEDA),
        "tensorboard": (T_BOOL, False),
        "print_network": (T_BOOL, False),
    },
    "predict": {
        "mode": (T_STR, None),
        "delta": (T_INT, DELTA_DEF),
        "aggregation": (T_STR, AGG_MEAN),
    },
    "evaluate": {
        "p_fix": (T_FLOAT, P_FIX_DEF),
        "pipeline": (T_STR, PIPE_FIX),
        "screening": (T_BOOL, True),
        "time_limit": (T_FLOAT, TIME_LIMIT_DEF),
        "unfix_budget": (T_INT, UNFIX_BUDGET_DEF),
        "delta": (T_INT, DELTA_DEF),
        "aggregation": (T_STR, AGG_MEAN),
        "jobs": (T_INT, 1),
    },
    "report": {},
}

ALL_COMMANDS = tuple(COMMAND_KEYS.keys())

# RunConfig
class RunConfig:
    """
    ----------
    - Resolved parameters of one command run
    - Values are read as attributes (config.seed, config.time_limit, ...)
    ----------
    """

    def __init__(self, command, values):
        self.command = command
        self.values = dict(values)

    def __getattr__(self, key):
        values = self.__dict__.get("values", {})
        if(key in values):
            return values[key]
        raise AttributeError(key)

    def to_record(self):
        return dict(self.values)

    def to_string(self):
        return "%s: %s" % (self.command.upper(), "  ".join("%s: %s" % (k, self.values[k]) for k in sorted(self.values)))

# command_schema
def command_schema(command):
    if(command not in COMMAND_KEYS):
        raise ConfigError("Unknown command: %r" % command)

    schema = dict(COMMON_KEYS)
    schema.update(COMMAND_KEYS[command])
    return schema

# _coerce
def _coerce(key, kind, value):
    if(value is None):
        return None

    try:
        if(kind == T_INT):
            if(isinstance(value, bool) or (float(value) != int(float(value)))):
                raise ValueError()
            return int(float(value))
        elif(kind == T_FLOAT):
            if(isinstance(value, bool)):
                raise ValueError()
            return float(value)
        elif(kind == T_STR):
            if(not isinstance(value, str)):
                raise ValueError()
            return value
        elif(kind == T_BOOL):
            if(not isinstance(value, bool)):
                raise ValueError()
            return value
        elif(kind == T_PAIR):
            if(len(value) != 2):
                raise ValueError()
            return [float(v) for v in value]
        elif(kind == T_INT_LIST):
            return [int(v) for v in value]
        elif(kind == T_FLOAT_LIST):
            return [float(v) for v in value]
    except (TypeError, ValueError):
        pass

    raise ConfigError("Config key %s: %r is not a valid %s" % (key, value, kind))

# read_config_file
def read_config_file(path, command):
    """
    ----------
    - Reads a flat json config file, rejecting nested values and keys the command does not know
    ----------
    """

    if(not os.path.isfile(path)):
        raise MissingArtifactError("config file not found: %s" % path)

    with open(path, "r") as i_stream:
        try:
            values = json.load(i_stream)
        except json.JSONDecodeError as err:
            raise ConfigError("%s: not valid json (%s)" % (path, err))

    if(not isinstance(values, dict)):
        raise ConfigError("%s: config must be a flat json object" % path)

    schema = command_schema(command)
    for key, value in values.items():
        if(key not in schema):
            raise ConfigError("%s: unknown config key %r for command %s" % (path, key, command))
        if(isinstance(value, dict)):
            raise ConfigError("%s: config key %r must not be nested" % (path, key))

    return values

# env_seed
def env_seed():
    raw = os.environ.get(ENV_SEED)
    if((raw is None) or (raw.strip() == "")):
        return None

    try:
        return int(raw)
    except ValueError:
        raise ConfigError("%s must be an integer, got %r" % (ENV_SEED, raw))

# resolve_config
def resolve_config(command, args):
    """
    ----------
    - Builds the RunConfig of a command from argparse args
    - Precedence (lowest first): defaults, SCENOPT_SEED env var, json file (-config), given flags
    - Flags left at None count as not given
    ----------
    """

    schema = command_schema(command)
    values = {key: default for key, (_, default) in schema.items()}

    seed = env_seed()
    if(seed is not None):
        values["seed"] = seed

    flags = dict(vars(args))
    config_file = flags.pop("config", None)
    if(config_file is not None):
        values.update(read_config_file(config_file, command))

    for key, value in flags.items():
        if(key not in schema):
            raise ConfigError("Unknown option %r for command %s" % (key, command))
        if(value is not None):
            values[key] = value

    resolved = {key: _coerce(key, schema[key][0], values[key]) for key in schema}
    return RunConfig(command, resolved)

# artifact_path
def artifact_path(config, folder, suffix=".jsonl", name=None):
    """
    ----------
    - <workdir>/<folder>/<set><suffix>, or <workdir>/<folder>/<name> when name is given
    ----------
    """

    if(name is None):
        name = config.set + suffix

    return os.path.join(config.workdir, folder, name)

# archive_config
def archive_config(config):
    """
    ----------
    - Writes the resolved config to <workdir>/configs/<command>.json and returns the path
    ----------
    """

    path = os.path.join(config.workdir, DIR_CONFIGS, config.command + ".json")
    os.makedirs(os.path.dirname(path), exist_ok=True)

    with open(path, "w", newline="\n") as o_stream:
        json.dump(config.to_record(), o_stream, sort_keys=True, indent=2)
        o_stream.write("\n")

    return path

# load_archived_config
def load_archived_config(workdir, command):
    """
    ----------
    - Values another command archived in this workdir, or None if it never ran here
    ----------
    """

    path = os.path.join(workdir, DIR_CONFIGS, command + ".json")
    if(not os.path.isfile(path)):
        return None

    with open(path, "r") as i_stream:
        return json.load(i_stream)

# update_manifest
def update_manifest(workdir, artifacts, command):
    """
    ----------
    - Records every artifact path (relative to workdir) as produced by command in MANIFEST.json
    - Entries from other commands are kept; the file is rewritten sorted by path
    ----------
    """

    path = os.path.join(workdir, MANIFEST_NAME)
    manifest = {}
    if(os.path.isfile(path)):
        with open(path, "r") as i_stream:
            try:
                manifest = json.load(i_stream)
            except json.JSONDecodeError:
                print("----- WARNING: %s is corrupt, rewriting it -----" % path)
                manifest = {}

    for artifact in artifacts:
        rel = os.path.relpath(artifact, workdir).replace(os.sep, "/")
        manifest[rel] = command

    os.makedirs(workdir, exist_ok=True)
    with open(path, "w", newline="\n") as o_stream:
        json.dump({k: manifest[k] for k in sorted(manifest)}, o_stream, indent=2)
        o_stream.write("\n")

    return path

# write_info
def write_info(config, lines=()):
    """
    ----------
    - Appends the resolved config (plus any extra lines) to <workdir>/info.txt
    ----------
    """

    info_f = os.path.join(config.workdir, INFO_NAME)
    os.makedirs(config.workdir, exist_ok=True)

    if(os.path.isfile(info_f)):
        info_mode = "a"
    else:
        info_mode = "w"

    with open(info_f, info_mode, newline="") as info_stream:
        print(config.to_string(), file=info_stream)
        for line in lines:
            print(line, file=info_stream)
        print(SEPARATOR, file=info_stream)

    return info_f

# run_guarded
def run_guarded(command, body):
    """
    ----------
    - Runs body() and maps the outcome to an exit code
    - Validation errors (bad arguments, bad config, missing files) print the message and give 2
    - Anything else prints the traceback and gives 3
    ----------
    """

    try:
        body()
    except Exception as err:
        if(is_validation_error(err)):
            print("%s: Error: %s" % (command, err))
            return EXIT_VALIDATION

        traceback.print_exc()
        print("%s: Error: %s" % (command, err))
        return EXIT_RUNTIME

    return EXIT_OK

import sys

from utilities.constants import *
from utilities.errors import InvalidArgumentError
from utilities.arguments import parse_generate_args
from utilities.configs import resolve_config, artifact_path, archive_config, write_info, update_manifest, run_guarded

from problems.generators import generate_family, MCLSP_RANGES_DEF, MSMK_RANGES_DEF
from problems.instances import save_instances, export_instance_csv

# generation_ranges
def generation_ranges(config):
    """
    ----------
    - The generation range keys of the config that apply to its instance kind
    ----------
    """

    if(config.kind == KIND_MCLSP):
        keys = MCLSP_RANGES_DEF.keys()
    else:
        keys = MSMK_RANGES_DEF.keys()

    return {k: config.values[k] for k in keys}

# cmd_generate
def cmd_generate(config):
    """
    ----------
    - Generates config.n instances into <workdir>/instances/<set>.jsonl plus a csv table
    - Output is a pure function of the config
    ----------
    """

    if(config.kind not in BASE_KINDS):
        raise InvalidArgumentError("kind must be one of %s, got %r" % (list(BASE_KINDS), config.kind))
    if(config.n < 1):
        raise InvalidArgumentError("n must be positive, got %d" % config.n)

    n_items = config.n_items
    horizon = config.horizon
    if(n_items is None):
        n_items = MCLSP_N_ITEMS_DEF if config.kind == KIND_MCLSP else MSMK_N_ITEMS_DEF
    if(horizon is None):
        horizon = MCLSP_HORIZON_DEF if config.kind == KIND_MCLSP else MSMK_HORIZON_DEF

    branching = config.branching
    if(branching and (len(branching) != horizon - 1)):
        raise InvalidArgumentError("branching needs %d entries (stages 2..%d), got %d" % (horizon - 1, horizon, len(branching)))

    print("Generating %d %s instances (items: %d  stages: %d  branching: %s)..." % (config.n, config.kind, n_items, horizon, branching))
    instances = generate_family(
        config.kind, config.n, config.seed, n_items, horizon, branching=branching,
        ranges=generation_ranges(config), tightness=config.tightness, levels=tuple(config.levels),
    )

    instances_f = artifact_path(config, DIR_INSTANCES)
    table_f = artifact_path(config, DIR_INSTANCES, suffix=".csv")
    save_instances(instances_f, instances)
    export_instance_csv(table_f, instances)
    print("Wrote:", instances_f)

    config_f = archive_config(config)
    write_info(config, ["instances: %d" % len(instances)])
    update_manifest(config.workdir, [instances_f, table_f, config_f], config.command)

    return instances

def main(argv=None):
    """
    ----------
    - Entry point for generating an instance set
    ----------
    """

    args = parse_generate_args(argv)

    def body():
        config = resolve_config("generate", args)
        cmd_generate(config)

    return run_guarded("generate", body)


if __name__ == "__main__":
    sys.exit(main())

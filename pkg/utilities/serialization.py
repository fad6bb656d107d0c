import json
import os

import numpy as np

from utilities.errors import MissingArtifactError, InvalidArgumentError

# to_plain
def to_plain(value):
    """
    ----------
    - Converts numpy containers and scalars into plain python values json can write
    - Python floats are written with their shortest round-trip repr, so reloading is bit-exact
    ----------
    """

    if(isinstance(value, np.ndarray)):
        return value.tolist()
    if(isinstance(value, (np.integer,))):
        return int(value)
    if(isinstance(value, (np.floating,))):
        return float(value)
    if(isinstance(value, (list, tuple))):
        return [to_plain(v) for v in value]
    if(isinstance(value, dict)):
        return {str(k): to_plain(v) for k, v in value.items()}

    return value

# dump_record
def dump_record(record):
    """
    ----------
    - Serializes one record into a single json line (keys sorted so output is byte-stable)
    ----------
    """

    return json.dumps(to_plain(record), sort_keys=True, allow_nan=False, separators=(",", ":"))

# write_jsonl
def write_jsonl(path, records):
    """
    ----------
    - Writes an iterable of records to path, one json object per line
    - Creates parent folders as needed
    ----------
    """

    p, _ = os.path.split(path)
    if(p):
        os.makedirs(p, exist_ok=True)

    with open(path, "w", newline="\n") as o_stream:
        for record in records:
            o_stream.write(dump_record(record))
            o_stream.write("\n")

    return

# read_jsonl
def read_jsonl(path):
    """
    ----------
    - Reads a json-lines file into a list of dicts
    - Raises MissingArtifactError naming the path if it does not exist
    ----------
    """

    if(not os.path.isfile(path)):
        raise MissingArtifactError("File not found: %s" % path)

    records = []
    with open(path, "r") as i_stream:
        for i, line in enumerate(i_stream):
            line = line.strip()
            if(not line):
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as err:
                raise InvalidArgumentError("%s: bad json on line %d: %s" % (path, i + 1, err))

    return records

# write_json
def write_json(path, obj):
    p, _ = os.path.split(path)
    if(p):
        os.makedirs(p, exist_ok=True)

    with open(path, "w", newline="\n") as o_stream:
        json.dump(to_plain(obj), o_stream, sort_keys=True, indent=2, allow_nan=False)
        o_stream.write("\n")

    return

# read_json
def read_json(path):
    if(not os.path.isfile(path)):
        raise MissingArtifactError("File not found: %s" % path)

    with open(path, "r") as i_stream:
        try:
            return json.load(i_stream)
        except json.JSONDecodeError as err:
            raise InvalidArgumentError("%s: bad json: %s" % (path, err))

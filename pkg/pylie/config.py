import os
import json
import copy

from .errors import InputError

# Path to user config file
CONFIG_PATH = os.path.join(os.path.expanduser("~"), ".pylie_config.json")

DEFAULTS = {
    "RANK_CONFIG": {"trials": 5, "bound": 1000, "seed": 0},
    "PROPP_CONFIG": {
        "grid_radius": 2,
        "random_points": 10000,
        "random_bound": 1000000,
        "witness_samples": 20,
    },
    "LOG_CONFIG": {"enabled": True, "log_dir": "~/pl_logs"},
    "CATALOG_CONFIG": {"path": None},
}


def load_config():
    """
    Load the user configuration, layered over the shipped defaults.

    Returns:
        dict: DEFAULTS with every section updated from ~/.pylie_config.json
        when that file exists.

    Raises:
        InputError: If the config file exists but is not valid JSON.
    """
    config = copy.deepcopy(DEFAULTS)
    if not os.path.exists(CONFIG_PATH):
        return config
    try:
        with open(CONFIG_PATH, "r", encoding="utf-8") as f:
            user = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"Could not read configuration at {CONFIG_PATH}: {e}") from e
    for section, values in user.items():
        if isinstance(values, dict) and isinstance(config.get(section), dict):
            config[section].update(values)
        else:
            config[section] = values
    return config


# Lazy-access wrappers for each config section
def RANK_CONFIG():
    return load_config().get("RANK_CONFIG", {})

def PROPP_CONFIG():
    return load_config().get("PROPP_CONFIG", {})

def LOG_CONFIG():
    return load_config().get("LOG_CONFIG", {})

def CATALOG_CONFIG():
    return load_config().get("CATALOG_CONFIG", {})


def set_env(overwrite=False, io=True):
    """
    Write the default configuration to ~/.pylie_config.json.

    Args:
        overwrite (bool): Replace an existing file. Without it an existing
            file is left untouched.
        io (bool): Print where the file went.

    Returns:
        bool: True when the file was written.
    """
    path = os.path.normpath(CONFIG_PATH)
    if os.path.exists(path) and not overwrite:
        if io:
            print(f"⚠️ Config file already exists at:\n{path}\nPass overwrite=True to replace it.")
        return False

    with open(path, "w", encoding="utf-8") as f:
        json.dump(DEFAULTS, f, indent=4)

    if io:
        print(f"✅ Configuration saved to:\n{path}")
        print("You can manually edit this file later to update any values.")
    return True

"""
pylandauer.io.ConfigFile
========================

Read-only key-value access to JSON and YAML configuration files.

Molecule descriptions and experiment configurations are stored as flat
dictionaries in either format. The file type is chosen by its suffix
(`.json`, `.yaml` or `.yml`).

Features:
- Loads the file once on construction.
- Provides `get` with a default value and `require` for mandatory keys.
- Reports missing files, parse errors and non-mapping documents as
  `ConfigError` with the absolute path.

"""

# Libs
import json
import logging
from pathlib import Path
from typing import Any

import yaml

# pylandauer
from pylandauer.msc.Errors import ConfigError


YAML_SUFFIXES = ('.yaml', '.yml')


class ConfigFile:
    """
    This class opens a JSON or YAML file and keeps its content in a dictionary which can be accessed with get().

    Attributes
    ----------
    path : Path
        Path to the configuration file.
    data : dict[str, Any]
        Content of the file.
    """
    path: Path
    data: dict[str, Any]


    def __init__(self, path: Path | str) -> None:
        """
        Opens the file and stores the key-value pairs in self.data.

        Parameters
        ----------
        path : Path or str
            Path to the JSON or YAML file.

        Raises
        ------
        ConfigError
            If the file is missing, unreadable or does not contain a mapping.
        """
        self.path = Path(path)
        self.data = {}
        self.read()

    def read(self) -> None:
        """
        Parses the file and stores the content in self.data.
        """
        abs_path = self.path.absolute()

        try:
            with open(self.path, encoding='utf-8') as file:
                if self.path.suffix.lower() in YAML_SUFFIXES:
                    content = yaml.safe_load(file)
                else:
                    content = json.load(file)
        except FileNotFoundError:
            raise ConfigError(f'Config file "{abs_path}" not found.')
        except OSError as e:
            raise ConfigError(f'Config file "{abs_path}" unreadable: {e}')
        except (json.JSONDecodeError, yaml.YAMLError) as e:
            raise ConfigError(f'Config file "{abs_path}" is malformed: {e}')

        # An empty YAML document parses to None
        if content is None:
            content = {}
        if not isinstance(content, dict):
            raise ConfigError(f'Config file "{abs_path}" must contain a '
                              f'mapping, got {type(content).__name__}.')

        self.data = content
        logging.info(f'Loaded config file: {abs_path}')

    def get(self, key: str, default_value: Any = None) -> Any:
        """
        Returns a value from the file.

        Parameters
        ----------
        key : str
            Key of the entry.
        default_value : Any, optional
            Returned if the key is missing.

        Returns
        -------
        Any
            The value belonging to the given key.
        """
        return self.data.get(key, default_value)

    def require(self, key: str) -> Any:
        """
        Returns a mandatory value from the file.

        Raises
        ------
        ConfigError
            If the key is missing.
        """
        if key not in self.data:
            raise ConfigError(f'Config file "{self.path.absolute()}" lacks '
                              f'the key "{key}".')
        return self.data[key]

    def __contains__(self, key: str) -> bool:
        return key in self.data

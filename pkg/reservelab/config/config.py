import logging
from fvcore.common.config import CfgNode as _CfgNode


class CfgNode(_CfgNode):
    """
    The same as `fvcore.common.config.CfgNode`, but different in:
    1. Refuse to merge a config written for a newer VERSION than the defaults.
    2. Warn when a config file carries no VERSION at all.
    Yaml is loaded with the safe loader: run configs and instance files are
    data and may come from anywhere.
    """

    def merge_from_file(
        self, cfg_filename: str, allow_unsafe: bool = False
    ) -> None:
        loaded_cfg = _CfgNode.load_yaml_with_base(
            cfg_filename, allow_unsafe=allow_unsafe
        )
        loaded_cfg = type(self)(loaded_cfg)

        # defaults.py needs to import CfgNode
        from .defaults import _C

        latest_ver = _C.VERSION
        assert (
            latest_ver == self.VERSION
        ), "CfgNode.merge_from_file is only allowed on a config of latest version!"

        loaded_ver = loaded_cfg.get("VERSION", None)
        if loaded_ver is None:
            logging.getLogger(__name__).warning(
                "Config '{}' has no VERSION. Assuming it to be compatible with latest v{}.".format(
                    cfg_filename, latest_ver
                )
            )
            loaded_ver = latest_ver
        assert (
            loaded_ver <= self.VERSION
        ), "Cannot merge a v{} config into a v{} config.".format(
            loaded_ver, self.VERSION
        )
        self.merge_from_other_cfg(loaded_cfg)


def get_cfg() -> CfgNode:
    """
    Get a copy of the default config.
    Returns:
        a reservelab CfgNode instance.
    """
    from .defaults import _C

    return _C.clone()

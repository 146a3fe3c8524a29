import logging

__all__ = ["StageHook", "StageLogger"]


class StageHook:
    """
    Base class for hooks that can be registered with the sequential filler.

    Each hook can implement 2 methods. The way they are called is demonstrated
    in the following snippet:

    .. code-block:: python

        for category in inst.precedence:
            for h in hooks:
                h.before_stage(category, quota, floor)
            ...  # fill the seats of `category`
            for h in hooks:
                h.after_stage(record)
    """

    def before_stage(self, category, quota, floor):
        pass

    def after_stage(self, record):
        pass


class StageLogger(StageHook):
    """
    Log every stage at DEBUG level, one line per stage.
    """

    def __init__(self, logger=None):
        self._logger = logger or logging.getLogger(__name__)

    def after_stage(self, record):
        self._logger.debug(record.trace_line())

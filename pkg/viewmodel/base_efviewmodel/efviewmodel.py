#-----------------------------------------------------------------------------+
from abc import ABC, abstractmethod


class EFViewModel(ABC):
    '''EFViewModel is an abstract base class for the ViewModel of the
    EtaForge application. It defines the interface the CLI view binds to:
    a validated run configuration and one execute() entry point per
    subcommand.

    PROPERTY ATTRIBUTES
    -------------------
    run_config : RunConfig
        Settings for the current run (precision, truncation, degree bound,
        output target and format). Owned by the ViewModel so that every
        command reads the same resolved values.
    initialized : bool
        True between initialize() and stop().
    '''
    #--------------------------------------------------------------------------+
    #region EFViewModel Abstract Properties
    #--------------------------------------------------------------------------+
    @property
    @abstractmethod
    def run_config(self):
        raise NotImplementedError

    @run_config.setter
    @abstractmethod
    def run_config(self, value) -> None:
        raise NotImplementedError

    @property
    @abstractmethod
    def initialized(self) -> bool:
        raise NotImplementedError
    #endregion EFViewModel Abstract Properties
    #--------------------------------------------------------------------------+
    #region EFViewModel Abstract Methods
    @abstractmethod
    def initialize(self) -> None:
        '''Initialize the ViewModel, typically called after the View is set.'''
        raise NotImplementedError

    @abstractmethod
    def stop(self) -> None:
        '''Stop and cleanup the ViewModel.'''
        raise NotImplementedError

    @abstractmethod
    def execute(self, command: str, args) -> "CommandResult":
        '''Run one subcommand with its parsed arguments.'''
        raise NotImplementedError
    #endregion EFViewModel Abstract Methods
    #--------------------------------------------------------------------------+

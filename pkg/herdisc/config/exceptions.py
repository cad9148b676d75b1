#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Custom exceptions for the herdisc library.
"""

class HerdiscError(Exception):
    """Base exception class for all herdisc-related errors."""
    pass

class ConfigError(HerdiscError):
    """Exception raised for configuration-related errors."""
    
    def __init__(self, message, config_key=None, config_value=None):
        super().__init__(message)
        self.config_key = config_key
        self.config_value = config_value
    
    def __str__(self):
        base_msg = super().__str__()
        if self.config_key:
            return f"{base_msg} (config key: {self.config_key})"
        return base_msg

class ContractViolationError(HerdiscError, ValueError):
    """Exception raised when an operation is called outside its preconditions."""
    
    def __init__(self, message, operation=None):
        super().__init__(message)
        self.operation = operation
    
    def __str__(self):
        base_msg = super().__str__()
        if self.operation:
            return f"{base_msg} (operation: {self.operation})"
        return base_msg

class FileProcessingError(HerdiscError):
    """Exception raised for matrix and coloring file errors."""
    
    def __init__(self, message, filename=None, line_number=None):
        super().__init__(message)
        self.filename = filename
        self.line_number = line_number
    
    def __str__(self):
        base_msg = super().__str__()
        details = []
        if self.filename:
            details.append(f"file: {self.filename}")
        if self.line_number:
            details.append(f"line: {self.line_number}")
        
        if details:
            return f"{base_msg} ({', '.join(details)})"
        return base_msg

class OracleBudgetError(HerdiscError):
    """Exception raised when an exhaustive oracle would exceed its width cap."""
    
    def __init__(self, message, n=None, max_n=None):
        super().__init__(message)
        self.n = n
        self.max_n = max_n
    
    def __str__(self):
        base_msg = super().__str__()
        if self.n is not None and self.max_n is not None:
            return f"{base_msg} (n: {self.n}, max_n: {self.max_n})"
        return base_msg

class RetryLimitError(HerdiscError):
    """Exception raised when a partial coloring round keeps failing."""
    
    def __init__(self, message, round_number=None, retries=None):
        super().__init__(message)
        self.round_number = round_number
        self.retries = retries
    
    def __str__(self):
        base_msg = super().__str__()
        details = []
        if self.round_number is not None:
            details.append(f"round: {self.round_number}")
        if self.retries is not None:
            details.append(f"retries: {self.retries}")
        
        if details:
            return f"{base_msg} ({', '.join(details)})"
        return base_msg

class NumericalStallError(HerdiscError):
    """Exception raised when a random walk cannot make numerical progress."""
    
    def __init__(self, message, rows=None, ambient_dim=None):
        super().__init__(message)
        self.rows = rows
        self.ambient_dim = ambient_dim
    
    def __str__(self):
        base_msg = super().__str__()
        if self.rows is not None and self.ambient_dim is not None:
            return f"{base_msg} (basis rows: {self.rows}/{self.ambient_dim})"
        return base_msg

class ReportGenerationError(HerdiscError):
    """Exception raised for report generation errors."""
    
    def __init__(self, message, report_type=None, output_path=None):
        super().__init__(message)
        self.report_type = report_type
        self.output_path = output_path


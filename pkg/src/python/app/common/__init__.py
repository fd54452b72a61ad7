"""Common Utilities and Shared Components"""
################################################################################################
'''
Copyright 2025 HardyCheck developers

This file holds the current version of HardyCheck.
'''
################################################################################################

hcVersion = "0.3.0"

################################################################################################

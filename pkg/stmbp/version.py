# NB a regex in setup.py parses the following line
STMBP_VERSION = '0.1.0'

#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from hashlib import md5

#----------------------------------------------------------------------------------------------------------------------------------

SEED_MODULUS = 2 ** 32


def derive_seed(global_seed, *parts):
    """
    Mixes a global seed with any number of identifying parts (sample id, epoch, fold...) into a 32-bit seed. The result depends
    only on the values, never on the order in which workers get to them, so parallel runs stay reproducible.

    >>> derive_seed(0, 'a', 1) == derive_seed(0, 'a', 1)
    True
    >>> derive_seed(0, 'a', 1) != derive_seed(0, 'a', 2)
    True
    """
    # md5 is plenty here, we only want a stable spread of bits, not secrecy
    digest = md5('\x1f'.join('%s' % (part,) for part in parts).encode('UTF-8')).hexdigest()
    return (int(digest[:8], 16) ^ int(global_seed)) % SEED_MODULUS

#----------------------------------------------------------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest
    doctest.testmod()

#----------------------------------------------------------------------------------------------------------------------------------

# coding: utf-8

# # Building B_theta one prime at a time
#
# A number belongs to B_theta when each new prime in its factorization is
# at most theta of the part already built.  Practical numbers use
# theta(n) = sigma(n) + 1 and 2-dense numbers use theta(n) = 2n.

# In[1]:

import numpy as np

from thetasets import Dense, Practical, PrimePowers, Smooth, is_member, members, theta_of_n


# Start with the two sets that agree for a while.

# In[2]:

for spec in (Practical(), Dense(2)):
    print(spec, np.sort(members(spec, 80)))


# The first difference is 78 = 2 * 3 * 13.  After 6 the practical threshold
# is sigma(6) + 1 = 13 while the dense one is 12, so only the practical set
# accepts 13 there.  The gap keeps widening as sigma(n) outgrows 2n.

# In[3]:

for n in (4, 6, 12, 24, 36):
    print(n, theta_of_n(Practical(), n), theta_of_n(Dense(2), n))


# Membership is decided prime by prime.  20 = 2^2 * 5 and theta(4) = 8 lets 5 in,
# while 10 = 2 * 5 fails since theta(2) = 4.

# In[4]:

print(is_member(Practical(), 20), is_member(Practical(), 10))


# Other rows of the same construction:

# In[5]:

print("prime powers <= 30:", np.sort(members(PrimePowers(), 30)))
print("7-smooth <= 30:   ", np.sort(members(Smooth(7), 30)))


# Counting up to 10^7 takes well under a second.

# In[6]:

for x in (10**5, 10**6, 10**7):
    print(x, len(members(Practical(), x)), len(members(Dense(2), x)))

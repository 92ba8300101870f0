# coding: utf-8

# # Residue classes and exact identities

# In[1]:

from thetasets import (
    Dense,
    Practical,
    count,
    count_gcd_class,
    histogram,
    mobius_rhs,
    sandwich_check,
)
from thetasets.arith import divisors


# Practical numbers mod 12.  Class 10 never occurs and class 2 holds only the number 2.

# In[2]:

h = histogram(Practical(), 10**6, 12)
for a in range(12):
    print(a, h[a])


# Splitting by gcd with q and recombining with the Moebius function gives the
# same numbers exactly, for every divisor d of q.

# In[3]:

q = 36
for d in divisors(q):
    print(d, count_gcd_class(Practical(), 10**5, q, d), mobius_rhs(Practical(), 10**5, q, d))


# Multiples of q are bracketed by the lifted set counted up to x/q.

# In[4]:

for q in (3, 5, 12, 30):
    rep = sandwich_check(Dense(2), 10**6, q)
    print(q, rep.lower, rep.mid, rep.upper, rep.passed)

print("B(10^6) =", count(Dense(2), 10**6))

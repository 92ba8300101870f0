# coding: utf-8

# # Checking structural laws on finite ranges

# In[1]:

from thetasets import Dense, Practical, classify_progression, closure_check, equidist_report, verify_inclusions


# Multiples of q in B versus the lifted set, element by element.

# In[2]:

for q in (2, 3, 12):
    rep = verify_inclusions(Practical(), q, 10**4)
    print(q, rep.passed, rep.stats)


# Multiplying a member by a (q+1)-dense number that is 1 mod q stays inside B.

# In[3]:

print(closure_check(Dense(2), 5, count=1000).passed)


# Each progression mod 12 holds no practical number, one, or infinitely many.
# Empty and singleton verdicts only reflect the searched range.

# In[4]:

for a in range(12):
    print(a, classify_progression(Practical(), 12, a, 10**6))


# Coprime classes even out as x grows.

# In[5]:

for row in equidist_report(Practical(), [10**4, 10**5, 10**6, 10**7], 5).rows:
    print(row["x"], row["B"], "%.2e" % row["D_over_B"])

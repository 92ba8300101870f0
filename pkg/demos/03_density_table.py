# coding: utf-8

# # Density constants and the r_q table
#
# c_theta is a slowly converging series over B.  The partial sum at
# N = 10^6 is still far from the limit, so the library fits the partial
# sums against 1/log and reports the intercept.  Both are shown.

# In[1]:

from thetasets import Dense, Practical, c_theta, r_q, r_qa, table_rq


# In[2]:

est = c_theta(Practical(), 10**6)
print("c_theta practical: %.5f (partial sum %.5f)" % (est.value, est.partial_sum))


# The share of 2-dense numbers divisible by q, next to the plain truncation.

# In[3]:

for q, r in table_rq(Dense(2), 12):
    print("%2d  %.5f  %.5f" % (q, r, r_q(Dense(2), q, method="plain")))


# Shares of single residue classes come from the Moebius average.

# In[4]:

for a in range(12):
    print(a, round(r_qa(Dense(2), 12, a), 4))

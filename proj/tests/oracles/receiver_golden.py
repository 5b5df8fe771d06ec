"""Term-by-term evaluation of the receiver moments for the EJPA defaults.

Run with mpmath available; prints the golden values frozen in
test_receiver_model.cpp.
"""
from mpmath import mp, mpf, sqrt, expm1, power

mp.dps = 40

H = mpf("6.62607015e-34")
KB = mpf("1.380649e-23")


def db(x):
    return power(10, mpf(x) / 10)


def thermal(f, t):
    return mpf(0) if t == 0 else 1 / expm1(H * mpf(f) / (KB * mpf(t)))


n_s = mpf("0.1")
eta = mpf("0.05")
f = mpf("5.31e9")
g_s = db("83.98")
g_d = db("16.82")
g_a = g_s / g_d
g_i = g_s
g_id = g_d
g_ia = g_i / g_id

n_as = thermal(f, 4)
n_ai = thermal(f, 4)
n_ds = thermal(f, 290)
n_di = thermal(f, 290)
n_e = thermal(f, 290)
n_add = n_ai + n_di / g_ia
n_i = n_s
cross = sqrt(n_s * (n_s + 1))
n_v = mpf(0)
m_modes = 300

s1 = g_s * eta * (n_s + 1) + g_s * eta * n_as * (g_a - 1) / g_a + g_s * (n_e + 1) * (1 - eta) / g_a + (g_d - 1) * n_ds
s0 = g_d * (n_e + 1) + n_ds * (g_d - 1)

idler = g_i * n_i / 2 + g_i * (n_add + 1) / 2
delta = sqrt(g_s * g_i * eta) * cross / 2
m_plus = n_v + s1 / 2 + idler + delta
m_minus = n_v + s1 / 2 + idler - delta
m0 = n_v + s0 / 2 + idler

i1 = 2 * n_v + s1
i0 = 2 * n_v + s0 + g_i * n_i / 2 + (n_add + 1) / 2

v1 = m_plus * (m_plus + 1) + m_minus * (m_minus + 1) - (i1 - n_i) ** 2 / 2
v0 = 2 * m0 * (m0 + 1) - (i0 - n_i) ** 2 / 2

snr = m_modes * 4 * (abs(m_plus - m_minus) - 0) ** 2 / (sqrt(v0) + sqrt(v1)) ** 2

for name, value in [
    ("n_a_s", n_as), ("n_d_s", n_ds), ("n_add_i", n_add),
    ("mean_plus_h1", m_plus), ("mean_minus_h1", m_minus), ("mean_h0", m0),
    ("intensity_h1", i1), ("intensity_h0", i0),
    ("var_h1", v1), ("var_h0", v0), ("snr", snr),
]:
    print(f"{name} = {mp.nstr(value, 20)}")

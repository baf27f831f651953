"""Tight slot-loop used by the simulator's run().

The kernel consumes a pre-drawn (n_slots, 9) array of uniforms; one row per
slot in the fixed order documented in simulator.DRAW_ORDER. It mirrors
simulator.step() exactly; tests assert bit-identical trajectories.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MODE_ORIGINAL = 0
MODE_DOM_SOURCE = 1
MODE_DOM_RELAY = 2
MODE_SATURATED = 3

# trace_state columns
TS_SLOT, TS_QS, TS_QR, TS_BS, TS_BR = 0, 1, 2, 3, 4
# trace_flags columns
TF_STX, TF_RTX, TF_SDUMMY, TF_RDUMMY, TF_COLL, TF_STD, TF_STR, TF_RTD = range(8)
# trace_cum columns (cumulative counts before the traced slot)
TC_SARR, TC_SDEP, TC_HAND, TC_RARR, TC_RDEP, TC_SHARV, TC_STX, TC_RHARV, TC_RTX = range(9)


@njit(cache=True)
def simulate_slots(
    draws,
    lam_s,
    lam_r,
    del_s,
    del_r,
    q_s,
    q_r,
    p_sd,
    p_rd,
    p_sr,
    mode,
    stride,
    trace_state,
    trace_flags,
    trace_cum,
):
    n = draws.shape[0]
    qs = 0
    qr = 0
    bs = 0
    br = 0
    s_dep = 0
    r_dep = 0
    hand = 0
    s_batt = 0
    r_batt = 0
    s_act = 0
    r_act = 0
    s_arr = 0
    r_arr = 0
    s_harv = 0
    r_harv = 0
    s_tx_n = 0
    r_tx_n = 0
    coll_n = 0
    ti = 0
    sat = mode == MODE_SATURATED
    for t in range(n):
        record = t % stride == 0
        if record:
            trace_state[ti, TS_SLOT] = t
            trace_state[ti, TS_QS] = qs
            trace_state[ti, TS_QR] = qr
            trace_state[ti, TS_BS] = bs
            trace_state[ti, TS_BR] = br
            trace_cum[ti, TC_SARR] = s_arr
            trace_cum[ti, TC_SDEP] = s_dep
            trace_cum[ti, TC_HAND] = hand
            trace_cum[ti, TC_RARR] = r_arr
            trace_cum[ti, TC_RDEP] = r_dep
            trace_cum[ti, TC_SHARV] = s_harv
            trace_cum[ti, TC_STX] = s_tx_n
            trace_cum[ti, TC_RHARV] = r_harv
            trace_cum[ti, TC_RTX] = r_tx_n

        s_has = qs > 0
        r_has = qr > 0
        if bs > 0:
            s_batt += 1
            if s_has or sat:
                s_act += 1
        if br > 0:
            r_batt += 1
            if r_has or sat:
                r_act += 1

        s_elig = bs > 0 and (s_has or sat or mode == MODE_DOM_SOURCE)
        r_elig = br > 0 and (r_has or sat or mode == MODE_DOM_RELAY)
        s_tx = s_elig and draws[t, 0] < q_s
        r_tx = r_elig and draws[t, 1] < q_r
        s_real = s_tx and (s_has or sat)
        r_real = r_tx and (r_has or sat)
        if s_tx:
            bs -= 1
            s_tx_n += 1
        if r_tx:
            br -= 1
            r_tx_n += 1
        coll = s_tx and r_tx
        if coll:
            coll_n += 1
        s_to_d = False
        s_to_r = False
        r_to_d = False
        if s_tx and not r_tx and s_real:
            if draws[t, 2] < p_sd:
                s_to_d = True
                s_dep += 1
                if not sat:
                    qs -= 1
            elif draws[t, 3] < p_sr:
                s_to_r = True
                s_dep += 1
                hand += 1
                if not sat:
                    qs -= 1
                    qr += 1
        if r_tx and not s_tx and r_real:
            if draws[t, 4] < p_rd:
                r_to_d = True
                r_dep += 1
                if not sat:
                    qr -= 1
        # arrivals land after service, so they are first usable next slot
        if draws[t, 5] < lam_s:
            s_arr += 1
            if not sat:
                qs += 1
        if draws[t, 6] < del_s:
            s_harv += 1
            bs += 1
        if draws[t, 7] < lam_r:
            r_arr += 1
            if not sat:
                qr += 1
        if draws[t, 8] < del_r:
            r_harv += 1
            br += 1

        if record:
            trace_flags[ti, TF_STX] = 1 if s_tx else 0
            trace_flags[ti, TF_RTX] = 1 if r_tx else 0
            trace_flags[ti, TF_SDUMMY] = 1 if (s_tx and not s_real) else 0
            trace_flags[ti, TF_RDUMMY] = 1 if (r_tx and not r_real) else 0
            trace_flags[ti, TF_COLL] = 1 if coll else 0
            trace_flags[ti, TF_STD] = 1 if s_to_d else 0
            trace_flags[ti, TF_STR] = 1 if s_to_r else 0
            trace_flags[ti, TF_RTD] = 1 if r_to_d else 0
            ti += 1

    return (
        qs,
        qr,
        bs,
        br,
        s_dep,
        r_dep,
        hand,
        s_batt,
        r_batt,
        s_act,
        r_act,
        s_arr,
        r_arr,
        s_harv,
        r_harv,
        s_tx_n,
        r_tx_n,
        coll_n,
    )

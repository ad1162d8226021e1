/* Generated by rtl2c from stw_ea.rtl. Do not edit. */
#include "power_rtl_runtime.h"

/* stw_ea(RS:5, RA:5, D:16 signed) */
void rtl_stw_ea(rtl_state *st, uint64_t RS, uint64_t RA, uint64_t D)
{
    uint64_t b = 0;
    uint64_t EA = 0;
    (void)RS;
    (void)EA;

    if (RA == UINT64_C(0)) {
        b = UINT64_C(0);
    } else {
        b = rtl_gpr_read(st, RA);
    }
    EA = b + rtl_exts(D, 16);
}

static const rtl_field_desc rtl_stw_ea__fields[] = {
    {"RS", 5, 0},
    {"RA", 5, 0},
    {"D", 16, 1},
};

static void rtl_stw_ea__entry(rtl_state *st, const uint64_t *f)
{
    rtl_stw_ea(st, f[0], f[1], f[2]);
}

const rtl_registry_entry rtl_registry[] = {
    {"stw_ea", rtl_stw_ea__entry, 3, rtl_stw_ea__fields},
    {NULL, NULL, 0, NULL}
};

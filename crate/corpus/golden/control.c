/* Generated by rtl2c from control.rtl. Do not edit. */
#include "power_rtl_runtime.h"

/* sel(RT:5, RA:5, RB:5, SEL:2) */
void rtl_sel(rtl_state *st, uint64_t RT, uint64_t RA, uint64_t RB, uint64_t SEL)
{
    switch (SEL) {
    case UINT64_C(0):
        rtl_gpr_write(st, RT, rtl_gpr_read(st, RA));
        break;
    case UINT64_C(1):
        rtl_gpr_write(st, RT, rtl_gpr_read(st, RB));
        break;
    case UINT64_C(0x2):
        rtl_gpr_write(st, RT, rtl_gpr_read(st, RA) ^ rtl_gpr_read(st, RB));
        break;
    default:
        rtl_gpr_write(st, RT, UINT64_C(0));
        break;
    }
}

/* findzb(RT:5, RA:5) */
void rtl_findzb(rtl_state *st, uint64_t RT, uint64_t RA)
{
    uint64_t s = 0;
    uint64_t i = 0;
    uint64_t r = 0;
    uint64_t byte = 0;

    s = rtl_gpr_read(st, RA);
    i = UINT64_C(0);
    r = UINT64_C(8);
    while (i < UINT64_C(8)) {
        byte = rtl_bit_slice(s, i * UINT64_C(8), (i * UINT64_C(8)) + UINT64_C(7), 64);
        switch (byte) {
        case UINT64_C(0):
            r = i;
            goto rtl_leave_1;
            break;
        }
        i = i + UINT64_C(1);
    }
rtl_leave_1:;
    rtl_gpr_write(st, RT, r);
}

/* gprmove(RT:5, RA:5) */
void rtl_gprmove(rtl_state *st, uint64_t RT, uint64_t RA)
{
    rtl_gpr_write(st, RT + UINT64_C(1), rtl_gpr_read(st, RA));
}

static const rtl_field_desc rtl_sel__fields[] = {
    {"RT", 5, 0},
    {"RA", 5, 0},
    {"RB", 5, 0},
    {"SEL", 2, 0},
};

static void rtl_sel__entry(rtl_state *st, const uint64_t *f)
{
    rtl_sel(st, f[0], f[1], f[2], f[3]);
}

static const rtl_field_desc rtl_findzb__fields[] = {
    {"RT", 5, 0},
    {"RA", 5, 0},
};

static void rtl_findzb__entry(rtl_state *st, const uint64_t *f)
{
    rtl_findzb(st, f[0], f[1]);
}

static const rtl_field_desc rtl_gprmove__fields[] = {
    {"RT", 5, 0},
    {"RA", 5, 0},
};

static void rtl_gprmove__entry(rtl_state *st, const uint64_t *f)
{
    rtl_gprmove(st, f[0], f[1]);
}

const rtl_registry_entry rtl_registry[] = {
    {"sel", rtl_sel__entry, 4, rtl_sel__fields},
    {"findzb", rtl_findzb__entry, 2, rtl_findzb__fields},
    {"gprmove", rtl_gprmove__entry, 2, rtl_gprmove__fields},
    {NULL, NULL, 0, NULL}
};

/* Generated by rtl2c from loadstore.rtl. Do not edit. */
#include "power_rtl_runtime.h"

/* lwz(RT:5, RA:5, D:16 signed) */
void rtl_lwz(rtl_state *st, uint64_t RT, uint64_t RA, uint64_t D)
{
    uint64_t b = 0;
    uint64_t EA = 0;

    if (RA == UINT64_C(0)) {
        b = UINT64_C(0);
    } else {
        b = rtl_gpr_read(st, RA);
    }
    EA = b + rtl_exts(D, 16);
    rtl_gpr_write(st, RT, rtl_mem_read(st, EA, 4));
}

/* stw(RS:5, RA:5, D:16 signed) */
void rtl_stw(rtl_state *st, uint64_t RS, uint64_t RA, uint64_t D)
{
    uint64_t b = 0;
    uint64_t EA = 0;

    if (RA == UINT64_C(0)) {
        b = UINT64_C(0);
    } else {
        b = rtl_gpr_read(st, RA);
    }
    EA = b + rtl_exts(D, 16);
    rtl_mem_write(st, EA, 4, rtl_bit_slice(rtl_gpr_read(st, RS), UINT64_C(32), UINT64_C(63), 64));
}

/* stdu(RS:5, RA:5, DS:14 signed) */
void rtl_stdu(rtl_state *st, uint64_t RS, uint64_t RA, uint64_t DS)
{
    uint64_t EA = 0;

    EA = rtl_gpr_read(st, RA) + rtl_exts(rtl_concat(DS, 14, UINT64_C(0x0), 2), 16);
    rtl_mem_write(st, EA, 8, rtl_gpr_read(st, RS));
    rtl_gpr_write(st, RA, EA);
}

/* lhbrx(RT:5, RA:5, RB:5) */
void rtl_lhbrx(rtl_state *st, uint64_t RT, uint64_t RA, uint64_t RB)
{
    uint64_t b = 0;
    uint64_t EA = 0;
    uint64_t h = 0;

    if (RA == UINT64_C(0)) {
        b = UINT64_C(0);
    } else {
        b = rtl_gpr_read(st, RA);
    }
    EA = b + rtl_gpr_read(st, RB);
    h = rtl_mem_read(st, EA, 2);
    rtl_gpr_write(st, RT, rtl_concat(rtl_concat(UINT64_C(0x0), 48, rtl_bit_slice(h, UINT64_C(8), UINT64_C(15), 64), 8), 56, rtl_bit_slice(h, UINT64_C(0), UINT64_C(7), 64), 8));
}

/* lbz(RT:5, RA:5, D:16 signed) */
void rtl_lbz(rtl_state *st, uint64_t RT, uint64_t RA, uint64_t D)
{
    uint64_t b = 0;
    uint64_t EA = 0;

    if (RA == UINT64_C(0)) {
        b = UINT64_C(0);
    } else {
        b = rtl_gpr_read(st, RA);
    }
    EA = b + rtl_exts(D, 16);
    rtl_gpr_write(st, RT, rtl_extz(rtl_mem_read(st, EA, 1), 8));
}

static const rtl_field_desc rtl_lwz__fields[] = {
    {"RT", 5, 0},
    {"RA", 5, 0},
    {"D", 16, 1},
};

static void rtl_lwz__entry(rtl_state *st, const uint64_t *f)
{
    rtl_lwz(st, f[0], f[1], f[2]);
}

static const rtl_field_desc rtl_stw__fields[] = {
    {"RS", 5, 0},
    {"RA", 5, 0},
    {"D", 16, 1},
};

static void rtl_stw__entry(rtl_state *st, const uint64_t *f)
{
    rtl_stw(st, f[0], f[1], f[2]);
}

static const rtl_field_desc rtl_stdu__fields[] = {
    {"RS", 5, 0},
    {"RA", 5, 0},
    {"DS", 14, 1},
};

static void rtl_stdu__entry(rtl_state *st, const uint64_t *f)
{
    rtl_stdu(st, f[0], f[1], f[2]);
}

static const rtl_field_desc rtl_lhbrx__fields[] = {
    {"RT", 5, 0},
    {"RA", 5, 0},
    {"RB", 5, 0},
};

static void rtl_lhbrx__entry(rtl_state *st, const uint64_t *f)
{
    rtl_lhbrx(st, f[0], f[1], f[2]);
}

static const rtl_field_desc rtl_lbz__fields[] = {
    {"RT", 5, 0},
    {"RA", 5, 0},
    {"D", 16, 1},
};

static void rtl_lbz__entry(rtl_state *st, const uint64_t *f)
{
    rtl_lbz(st, f[0], f[1], f[2]);
}

const rtl_registry_entry rtl_registry[] = {
    {"lwz", rtl_lwz__entry, 3, rtl_lwz__fields},
    {"stw", rtl_stw__entry, 3, rtl_stw__fields},
    {"stdu", rtl_stdu__entry, 3, rtl_stdu__fields},
    {"lhbrx", rtl_lhbrx__entry, 3, rtl_lhbrx__fields},
    {"lbz", rtl_lbz__entry, 3, rtl_lbz__fields},
    {NULL, NULL, 0, NULL}
};

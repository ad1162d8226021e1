/* Generated by rtl2c from rotate.rtl. Do not edit. */
#include "power_rtl_runtime.h"

/* rlwinm(RS:5, RA:5, SH:5, MB:5, ME:5) */
void rtl_rlwinm(rtl_state *st, uint64_t RS, uint64_t RA, uint64_t SH, uint64_t MB, uint64_t ME)
{
    uint64_t n = 0;
    uint64_t r = 0;
    uint64_t m = 0;

    n = SH;
    r = rtl_rotl(rtl_concat(rtl_bit_slice(rtl_gpr_read(st, RS), UINT64_C(32), UINT64_C(63), 64), 32, rtl_bit_slice(rtl_gpr_read(st, RS), UINT64_C(32), UINT64_C(63), 64), 32), n);
    m = rtl_mask(MB + UINT64_C(32), ME + UINT64_C(32));
    rtl_gpr_write(st, RA, r & m);
}

/* brd(RS:5, RA:5) */
void rtl_brd(rtl_state *st, uint64_t RS, uint64_t RA)
{
    uint64_t s = 0;

    s = rtl_gpr_read(st, RS);
    rtl_gpr_write(st, RA, rtl_concat(rtl_concat(rtl_concat(rtl_concat(rtl_concat(rtl_concat(rtl_concat(rtl_bit_slice(s, UINT64_C(56), UINT64_C(63), 64), 8, rtl_bit_slice(s, UINT64_C(48), UINT64_C(55), 64), 8), 16, rtl_bit_slice(s, UINT64_C(40), UINT64_C(47), 64), 8), 24, rtl_bit_slice(s, UINT64_C(32), UINT64_C(39), 64), 8), 32, rtl_bit_slice(s, UINT64_C(24), UINT64_C(31), 64), 8), 40, rtl_bit_slice(s, UINT64_C(16), UINT64_C(23), 64), 8), 48, rtl_bit_slice(s, UINT64_C(8), UINT64_C(15), 64), 8), 56, rtl_bit_slice(s, UINT64_C(0), UINT64_C(7), 64), 8));
}

/* insrdi(RS:5, RA:5) */
void rtl_insrdi(rtl_state *st, uint64_t RS, uint64_t RA)
{
    uint64_t t = 0;

    t = rtl_gpr_read(st, RA);
    t = rtl_slice_insert(t, UINT64_C(16), UINT64_C(31), 64, rtl_bit_slice(rtl_gpr_read(st, RS), UINT64_C(48), UINT64_C(63), 64));
    rtl_gpr_write(st, RA, t);
}

/* cntlzd(RS:5, RA:5) */
void rtl_cntlzd(rtl_state *st, uint64_t RS, uint64_t RA)
{
    uint64_t s = 0;
    uint64_t n = 0;

    s = rtl_gpr_read(st, RS);
    n = UINT64_C(0);
    while (n < UINT64_C(64)) {
        if (rtl_bit_slice(s, n, n, 64) == UINT64_C(1)) {
            break;
        }
        n = n + UINT64_C(1);
    }
    rtl_gpr_write(st, RA, n);
}

static const rtl_field_desc rtl_rlwinm__fields[] = {
    {"RS", 5, 0},
    {"RA", 5, 0},
    {"SH", 5, 0},
    {"MB", 5, 0},
    {"ME", 5, 0},
};

static void rtl_rlwinm__entry(rtl_state *st, const uint64_t *f)
{
    rtl_rlwinm(st, f[0], f[1], f[2], f[3], f[4]);
}

static const rtl_field_desc rtl_brd__fields[] = {
    {"RS", 5, 0},
    {"RA", 5, 0},
};

static void rtl_brd__entry(rtl_state *st, const uint64_t *f)
{
    rtl_brd(st, f[0], f[1]);
}

static const rtl_field_desc rtl_insrdi__fields[] = {
    {"RS", 5, 0},
    {"RA", 5, 0},
};

static void rtl_insrdi__entry(rtl_state *st, const uint64_t *f)
{
    rtl_insrdi(st, f[0], f[1]);
}

static const rtl_field_desc rtl_cntlzd__fields[] = {
    {"RS", 5, 0},
    {"RA", 5, 0},
};

static void rtl_cntlzd__entry(rtl_state *st, const uint64_t *f)
{
    rtl_cntlzd(st, f[0], f[1]);
}

const rtl_registry_entry rtl_registry[] = {
    {"rlwinm", rtl_rlwinm__entry, 5, rtl_rlwinm__fields},
    {"brd", rtl_brd__entry, 2, rtl_brd__fields},
    {"insrdi", rtl_insrdi__entry, 2, rtl_insrdi__fields},
    {"cntlzd", rtl_cntlzd__entry, 2, rtl_cntlzd__fields},
    {NULL, NULL, 0, NULL}
};

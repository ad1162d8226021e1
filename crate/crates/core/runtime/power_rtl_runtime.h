/*
 * Runtime support for C translation units emitted by rtl2c.
 *
 * Machine state: 32 x 64-bit GPRs and a sparse, zero-filled, big-endian
 * byte memory held in 4 KiB pages behind an open-addressed page table.
 * Every helper mirrors the reference interpreter bit for bit.
 *
 * The embedding program must define rtl_fault(), which must not return.
 */
#ifndef POWER_RTL_RUNTIME_H
#define POWER_RTL_RUNTIME_H

#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>
#include <string.h>

#define RTL_PAGE_SHIFT 12
#define RTL_PAGE_SIZE (1u << RTL_PAGE_SHIFT)

enum {
    RTL_FAULT_DIV_BY_ZERO = 1,
    RTL_FAULT_SLICE_OUT_OF_RANGE = 2,
    RTL_FAULT_WIDTH_RANGE = 3,
    RTL_FAULT_BAD_ACCESS_SIZE = 4,
    RTL_FAULT_OUT_OF_MEMORY = 5
};

void rtl_fault(int code);

typedef struct rtl_page {
    uint64_t base;
    uint8_t bytes[RTL_PAGE_SIZE];
    uint8_t touched[RTL_PAGE_SIZE / 8];
} rtl_page;

typedef struct rtl_state {
    uint64_t gpr[32];
    rtl_page **pages;
    size_t capacity;
    size_t count;
} rtl_state;

typedef struct rtl_field_desc {
    const char *name;
    unsigned width;
    int is_signed;
} rtl_field_desc;

typedef void (*rtl_entry_fn)(rtl_state *st, const uint64_t *fields);

/* One per emitted function; the table ends with an all-zero sentinel. */
typedef struct rtl_registry_entry {
    const char *mnemonic;
    rtl_entry_fn fn;
    unsigned field_count;
    const rtl_field_desc *fields;
} rtl_registry_entry;

static inline void rtl_state_init(rtl_state *st)
{
    memset(st->gpr, 0, sizeof st->gpr);
    st->pages = NULL;
    st->capacity = 0;
    st->count = 0;
}

static inline void rtl_state_free(rtl_state *st)
{
    size_t i;
    for (i = 0; i < st->capacity; i++) {
        free(st->pages[i]);
    }
    free(st->pages);
    rtl_state_init(st);
}

static inline size_t rtl_page_slot(uint64_t base, size_t capacity)
{
    uint64_t h = (base >> RTL_PAGE_SHIFT) * UINT64_C(0x9E3779B97F4A7C15);
    return (size_t)(h >> 32) & (capacity - 1);
}

static inline void rtl_page_grow(rtl_state *st)
{
    size_t new_cap = st->capacity ? st->capacity * 2 : 64;
    rtl_page **table = (rtl_page **)calloc(new_cap, sizeof *table);
    size_t i;
    if (!table) {
        rtl_fault(RTL_FAULT_OUT_OF_MEMORY);
        return;
    }
    for (i = 0; i < st->capacity; i++) {
        rtl_page *p = st->pages[i];
        if (p) {
            size_t slot = rtl_page_slot(p->base, new_cap);
            while (table[slot]) {
                slot = (slot + 1) & (new_cap - 1);
            }
            table[slot] = p;
        }
    }
    free(st->pages);
    st->pages = table;
    st->capacity = new_cap;
}

/* Page holding `addr`, or NULL when absent and `create` is 0. */
static inline rtl_page *rtl_page_find(rtl_state *st, uint64_t addr, int create)
{
    uint64_t base = addr & ~(uint64_t)(RTL_PAGE_SIZE - 1);
    size_t slot;
    rtl_page *p;
    if (st->capacity) {
        slot = rtl_page_slot(base, st->capacity);
        while ((p = st->pages[slot]) != NULL) {
            if (p->base == base) {
                return p;
            }
            slot = (slot + 1) & (st->capacity - 1);
        }
    }
    if (!create) {
        return NULL;
    }
    if ((st->count + 1) * 2 > st->capacity) {
        rtl_page_grow(st);
    }
    p = (rtl_page *)calloc(1, sizeof *p);
    if (!p) {
        rtl_fault(RTL_FAULT_OUT_OF_MEMORY);
        return NULL;
    }
    p->base = base;
    slot = rtl_page_slot(base, st->capacity);
    while (st->pages[slot]) {
        slot = (slot + 1) & (st->capacity - 1);
    }
    st->pages[slot] = p;
    st->count++;
    return p;
}

static inline uint8_t rtl_load_byte(rtl_state *st, uint64_t addr)
{
    rtl_page *p = rtl_page_find(st, addr, 0);
    return p ? p->bytes[addr & (RTL_PAGE_SIZE - 1)] : 0;
}

static inline void rtl_store_byte(rtl_state *st, uint64_t addr, uint8_t value)
{
    rtl_page *p = rtl_page_find(st, addr, 1);
    unsigned off = (unsigned)(addr & (RTL_PAGE_SIZE - 1));
    p->bytes[off] = value;
    p->touched[off >> 3] |= (uint8_t)(1u << (off & 7));
}

static inline uint64_t rtl_low_mask(uint64_t width)
{
    return width >= 64 ? UINT64_MAX : ((UINT64_C(1) << width) - 1);
}

static inline uint64_t rtl_exts(uint64_t value, uint64_t width)
{
    uint64_t sign;
    if (width < 1 || width > 64) {
        rtl_fault(RTL_FAULT_WIDTH_RANGE);
        return 0;
    }
    if (width == 64) {
        return value;
    }
    sign = UINT64_C(1) << (width - 1);
    return ((value & rtl_low_mask(width)) ^ sign) - sign;
}

static inline uint64_t rtl_extz(uint64_t value, uint64_t width)
{
    if (width < 1 || width > 64) {
        rtl_fault(RTL_FAULT_WIDTH_RANGE);
        return 0;
    }
    return value & rtl_low_mask(width);
}

/* MSB0 bits hi..lo of a width-bit value. */
static inline uint64_t rtl_bit_slice(uint64_t value, uint64_t hi, uint64_t lo, uint64_t width)
{
    if (!(hi <= lo && lo < width && width <= 64)) {
        rtl_fault(RTL_FAULT_SLICE_OUT_OF_RANGE);
        return 0;
    }
    return (value >> (width - 1 - lo)) & rtl_low_mask(lo - hi + 1);
}

static inline uint64_t rtl_slice_insert(uint64_t value, uint64_t hi, uint64_t lo,
                                        uint64_t width, uint64_t field)
{
    uint64_t shift, mask;
    if (!(hi <= lo && lo < width && width <= 64)) {
        rtl_fault(RTL_FAULT_SLICE_OUT_OF_RANGE);
        return 0;
    }
    shift = width - 1 - lo;
    mask = rtl_low_mask(lo - hi + 1) << shift;
    return (value & ~mask) | ((field << shift) & mask);
}

static inline uint64_t rtl_concat(uint64_t lhs, uint64_t lhs_width, uint64_t rhs, uint64_t rhs_width)
{
    lhs &= rtl_low_mask(lhs_width);
    rhs &= rtl_low_mask(rhs_width);
    return (rhs_width >= 64 ? 0 : lhs << rhs_width) | rhs;
}

static inline uint64_t rtl_rotl(uint64_t value, uint64_t n)
{
    n %= 64;
    return n == 0 ? value : (value << n) | (value >> (64 - n));
}

static inline uint64_t rtl_mask(uint64_t start, uint64_t stop)
{
    uint64_t from_start, to_stop;
    if (start > 63 || stop > 63) {
        rtl_fault(RTL_FAULT_SLICE_OUT_OF_RANGE);
        return 0;
    }
    from_start = UINT64_MAX >> start;
    to_stop = UINT64_MAX << (63 - stop);
    return start <= stop ? (from_start & to_stop) : (from_start | to_stop);
}

static inline uint64_t rtl_not(uint64_t value, uint64_t width)
{
    return ~value & rtl_low_mask(width);
}

static inline uint64_t rtl_divu(uint64_t a, uint64_t b)
{
    if (b == 0) {
        rtl_fault(RTL_FAULT_DIV_BY_ZERO);
        return 0;
    }
    return a / b;
}

static inline uint64_t rtl_modu(uint64_t a, uint64_t b)
{
    if (b == 0) {
        rtl_fault(RTL_FAULT_DIV_BY_ZERO);
        return 0;
    }
    return a % b;
}

static inline uint64_t rtl_gpr_read(rtl_state *st, uint64_t index)
{
    return st->gpr[index & 31];
}

static inline void rtl_gpr_write(rtl_state *st, uint64_t index, uint64_t value)
{
    st->gpr[index & 31] = value;
}

static inline int rtl_access_size_ok(uint64_t n)
{
    return n == 1 || n == 2 || n == 4 || n == 8;
}

static inline uint64_t rtl_mem_read(rtl_state *st, uint64_t ea, uint64_t n)
{
    uint64_t value = 0, i;
    if (!rtl_access_size_ok(n)) {
        rtl_fault(RTL_FAULT_BAD_ACCESS_SIZE);
        return 0;
    }
    for (i = 0; i < n; i++) {
        value = (value << 8) | rtl_load_byte(st, ea + i);
    }
    return value;
}

static inline void rtl_mem_write(rtl_state *st, uint64_t ea, uint64_t n, uint64_t value)
{
    uint64_t i;
    if (!rtl_access_size_ok(n)) {
        rtl_fault(RTL_FAULT_BAD_ACCESS_SIZE);
        return;
    }
    for (i = 0; i < n; i++) {
        rtl_store_byte(st, ea + i, (uint8_t)(value >> (8 * (n - 1 - i))));
    }
}

#endif /* POWER_RTL_RUNTIME_H */

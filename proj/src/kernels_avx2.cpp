// Built with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "spdc/kernels.hpp"
#include "spdc/quad.hpp"

namespace spdc::kernels {

namespace {

// Cephes-style polynomial sin and exp, accurate to a few ulp on the
// argument ranges used here (|x| < 1e6 for sin, x <= 0 for exp).
inline __m256d sin_pd(__m256d x)
{
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d sign = _mm256_and_pd(x, sign_mask);
    x = _mm256_andnot_pd(sign_mask, x);

    __m256d y = _mm256_floor_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.27323954473516268615)));
    // j = y mod 8, rounded up to even
    __m256d j = _mm256_sub_pd(y, _mm256_mul_pd(_mm256_set1_pd(8.0), _mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.125)))));
    const __m256d odd = _mm256_sub_pd(j, _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_floor_pd(_mm256_mul_pd(j, _mm256_set1_pd(0.5)))));
    y = _mm256_add_pd(y, odd);
    j = _mm256_add_pd(j, odd);
    const __m256d wrap = _mm256_cmp_pd(j, _mm256_set1_pd(7.5), _CMP_GT_OQ);
    j = _mm256_sub_pd(j, _mm256_and_pd(wrap, _mm256_set1_pd(8.0)));
    const __m256d upper = _mm256_cmp_pd(j, _mm256_set1_pd(3.5), _CMP_GT_OQ);
    j = _mm256_sub_pd(j, _mm256_and_pd(upper, _mm256_set1_pd(4.0)));
    const __m256d use_cos = _mm256_cmp_pd(j, _mm256_set1_pd(1.5), _CMP_GT_OQ);

    __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(7.85398125648498535156E-1), x);
    z = _mm256_fnmadd_pd(y, _mm256_set1_pd(3.77489470793079817668E-8), z);
    z = _mm256_fnmadd_pd(y, _mm256_set1_pd(2.69515142907905952645E-15), z);
    const __m256d zz = _mm256_mul_pd(z, z);

    __m256d ps = _mm256_set1_pd(1.58962301576546568060E-10);
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(-2.50507477628578072866E-8));
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(2.75573136213857245213E-6));
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(-1.98412698295895385996E-4));
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(8.33333333332211858878E-3));
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(-1.66666666666666307295E-1));
    const __m256d s = _mm256_fmadd_pd(_mm256_mul_pd(z, zz), ps, z);

    __m256d pc = _mm256_set1_pd(-1.13585365213876817300E-11);
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(2.08757008419747316778E-9));
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(-2.75573141792967388112E-7));
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(2.48015872888517045348E-5));
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(-1.38888888888730564116E-3));
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(4.16666666666665929218E-2));
    const __m256d c = _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), pc, _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0)));

    __m256d r = _mm256_blendv_pd(s, c, use_cos);
    r = _mm256_xor_pd(r, _mm256_and_pd(upper, sign_mask));
    return _mm256_xor_pd(r, sign);
}

inline __m256d exp_pd(__m256d x)
{
    const __m256d too_small = _mm256_cmp_pd(x, _mm256_set1_pd(-708.0), _CMP_LT_OQ);
    x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));
    x = _mm256_min_pd(x, _mm256_set1_pd(708.0));
    const __m256d n = _mm256_floor_pd(_mm256_fmadd_pd(x, _mm256_set1_pd(1.4426950408889634073599), _mm256_set1_pd(0.5)));
    x = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), x);
    x = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), x);
    const __m256d xx = _mm256_mul_pd(x, x);
    __m256d p = _mm256_set1_pd(1.26177193074810590878E-4);
    p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(3.02994407707441961300E-2));
    p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(9.99999999999999999910E-1));
    p = _mm256_mul_pd(p, x);
    __m256d q = _mm256_set1_pd(3.00198505138664455042E-6);
    q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.52448340349684104192E-3));
    q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.27265548208155028766E-1));
    q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.00000000000000000009E0));
    __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));
    // 2^n through the exponent field
    const __m256d magic = _mm256_set1_pd(6755399441055744.0 + 1023.0);
    const __m256i bits = _mm256_slli_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)), 52);
    e = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));
    return _mm256_andnot_pd(too_small, e);
}

struct LaneSum {
    __m256d sum = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();

    void add(__m256d v)
    {
        const __m256d y = _mm256_sub_pd(v, comp);
        const __m256d t = _mm256_add_pd(sum, y);
        comp = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
        sum = t;
    }

    void reduce_into(CompensatedSum& acc) const
    {
        alignas(32) double s[4];
        alignas(32) double c[4];
        _mm256_store_pd(s, sum);
        _mm256_store_pd(c, comp);
        for (int k = 0; k < 4; ++k) {
            acc.add(s[k]);
            acc.add(-c[k]);
        }
    }
};

}  // namespace

KernelSum as_cell_sum_avx2(const PumpNodes& nodes, const AsCell& cell)
{
    const std::size_t n = nodes.size();
    const std::size_t nv = n - n % 4;
    const __m256d ksx = _mm256_set1_pd(cell.ksx);
    const __m256d ksy = _mm256_set1_pd(cell.ksy);
    const __m256d kzs = _mm256_set1_pd(cell.kz_signal);
    const __m256d shell2 = _mm256_set1_pd(cell.shell2);
    const __m256d half = _mm256_set1_pd(cell.half_length);
    const __m256d g2 = _mm256_set1_pd(-2.0 * cell.gamma * cell.gamma);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d tiny = _mm256_set1_pd(1e-8);
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const bool gaussian = cell.envelope == Envelope::gaussian;

    LaneSum lanes;
    __m256d evanescent = zero;
    for (std::size_t j = 0; j < nv; j += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(&nodes.kx[j]), ksx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(&nodes.ky[j]), ksy);
        __m256d rad = _mm256_fnmadd_pd(dx, dx, shell2);
        rad = _mm256_fnmadd_pd(dy, dy, rad);
        evanescent = _mm256_or_pd(evanescent, _mm256_cmp_pd(rad, zero, _CMP_LT_OQ));
        rad = _mm256_max_pd(rad, zero);
        const __m256d dk = _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(&nodes.kz[j]), kzs), _mm256_sqrt_pd(rad));
        const __m256d x = _mm256_mul_pd(half, dk);
        __m256d env2;
        if (gaussian) {
            env2 = exp_pd(_mm256_mul_pd(g2, _mm256_mul_pd(x, x)));
        } else {
            const __m256d small = _mm256_cmp_pd(_mm256_and_pd(x, abs_mask), tiny, _CMP_LT_OQ);
            const __m256d xs = _mm256_blendv_pd(x, one, small);
            const __m256d s = _mm256_blendv_pd(_mm256_div_pd(sin_pd(xs), xs), one, small);
            env2 = _mm256_mul_pd(s, s);
        }
        lanes.add(_mm256_mul_pd(_mm256_loadu_pd(&nodes.weight[j]), env2));
    }

    CompensatedSum acc;
    lanes.reduce_into(acc);
    KernelSum out;
    out.evanescent = _mm256_movemask_pd(evanescent) != 0;
    if (nv < n) {
        PumpNodes tail;
        tail.kx.assign(nodes.kx.begin() + nv, nodes.kx.end());
        tail.ky.assign(nodes.ky.begin() + nv, nodes.ky.end());
        tail.kz.assign(nodes.kz.begin() + nv, nodes.kz.end());
        tail.weight.assign(nodes.weight.begin() + nv, nodes.weight.end());
        const KernelSum t = as_cell_sum_scalar(tail, cell);
        acc.add(t.value);
        out.evanescent = out.evanescent || t.evanescent;
    }
    out.value = acc.value();
    return out;
}

double gaussian_ring_sum_avx2(const double* sines, std::size_t n, double d, double c, double a)
{
    const std::size_t nv = n - n % 4;
    const __m256d vd = _mm256_set1_pd(d);
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d va = _mm256_set1_pd(-a);
    LaneSum lanes;
    for (std::size_t j = 0; j < nv; j += 4) {
        const __m256d u = _mm256_fmsub_pd(vd, _mm256_loadu_pd(sines + j), vc);
        lanes.add(exp_pd(_mm256_mul_pd(va, _mm256_mul_pd(u, u))));
    }
    CompensatedSum acc;
    lanes.reduce_into(acc);
    acc.add(gaussian_ring_sum_scalar(sines + nv, n - nv, d, c, a));
    return acc.value();
}

}  // namespace spdc::kernels

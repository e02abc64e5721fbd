#include "bwh/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace bwh {

namespace {

// Gauss-Kronrod 15-point pair on [-1, 1]. The 7-point Gauss subset sits at
// the odd Kronrod abscissae.
constexpr double kXgk[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

constexpr double kWgk[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

constexpr double kWg[7] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
                           0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
                           0.129484966168869693270611432679082};

struct PanelEval {
    cplx kronrod;
    cplx gauss;
    double err;
};

PanelEval eval_panel(const std::function<cplx(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    cplx sk(0.0, 0.0), sg(0.0, 0.0);
    for (int i = 0; i < 15; ++i) {
        const cplx v = f(c + h * kXgk[i]);
        sk += kWgk[i] * v;
        if (i % 2 == 1) sg += kWg[(i - 1) / 2] * v;
    }
    sk *= h;
    sg *= h;
    return {sk, sg, std::abs(sk - sg)};
}

struct Piece {
    double a, b;
    cplx value;
    double err;
};

}  // namespace

QuadResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                              const QuadOptions& opt) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    std::vector<Piece> heap;
    std::vector<Piece> frozen;  // panels too narrow to bisect further
    PanelEval first = eval_panel(f, a, b);
    out.evaluations = 15;
    heap.push_back({a, b, first.kronrod, first.err});

    auto cmp = [](const Piece& x, const Piece& y) { return x.err < y.err; };
    std::make_heap(heap.begin(), heap.end(), cmp);

    cplx total = first.kronrod;
    double toterr = first.err;

    while (true) {
        const double goal = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (toterr <= goal) {
            out.converged = true;
            break;
        }
        if (out.evaluations + 30 > opt.max_evaluations) break;
        if (heap.empty()) break;

        std::pop_heap(heap.begin(), heap.end(), cmp);
        Piece worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            frozen.push_back(worst);
            continue;
        }
        PanelEval left = eval_panel(f, worst.a, mid);
        PanelEval right = eval_panel(f, mid, worst.b);
        out.evaluations += 30;

        total += left.kronrod + right.kronrod - worst.value;
        toterr += left.err + right.err - worst.err;
        toterr = std::max(toterr, 0.0);

        heap.push_back({worst.a, mid, left.kronrod, left.err});
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back({mid, worst.b, right.kronrod, right.err});
        std::push_heap(heap.begin(), heap.end(), cmp);
    }

    // incremental accumulation drifts; refresh from the surviving panels
    double err = 0.0;
    cplx val(0.0, 0.0);
    for (const Piece& p : heap) {
        err += p.err;
        val += p.value;
    }
    for (const Piece& p : frozen) {
        err += p.err;
        val += p.value;
    }
    out.value = val;
    out.error_estimate = err;
    out.converged = err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(val));
    return out;
}

QuadResult integrate_segments(const std::function<cplx(double)>& f,
                              const std::vector<double>& breakpoints, const QuadOptions& opt) {
    QuadResult out;
    out.converged = true;
    if (breakpoints.size() < 2) return out;
    QuadOptions per = opt;
    per.abs_tol = opt.abs_tol / double(breakpoints.size() - 1);
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        QuadResult r = integrate_adaptive(f, breakpoints[i], breakpoints[i + 1], per);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
        out.evaluations += r.evaluations;
        out.converged = out.converged && r.converged;
    }
    return out;
}

}  // namespace bwh

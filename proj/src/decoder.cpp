#include "icsi/decoder.hpp"

#include "icsi/bounds.hpp"
#include "icsi/error.hpp"

namespace icsi {

namespace {

void check_receiver(const IcsiInstance& inst, const FqMatrix& L, std::size_t i) {
    if (L.rows() != inst.n) throw InvalidInput("matrix row count does not match the instance");
    if (i >= inst.m) throw InvalidInput("receiver " + std::to_string(i + 1) + " out of range");
}

void check_view(const IcsiInstance& inst, const FqMatrix& L, const ReceiverView& view) {
    check_receiver(inst, L, view.i);
    if (view.y.size() != L.cols())
        throw InvalidInput("received word has length " + std::to_string(view.y.size()) + ", expected " +
                           std::to_string(L.cols()));
    if (view.side.size() != inst.X[view.i].size())
        throw InvalidInput("side information has " + std::to_string(view.side.size()) + " values, expected " +
                           std::to_string(inst.X[view.i].size()));
}

// y - e - x_{X_i} L_{X_i}
Vec strip_side(const IcsiInstance& inst, const FqMatrix& L, const ReceiverView& view, std::span<const Elem> e) {
    const FieldSpec& f = L.field();
    Vec w = view.y;
    if (!e.empty())
        for (std::size_t c = 0; c < w.size(); ++c) w[c] = f.sub(w[c], e[c]);
    const auto& xs = inst.X[view.i];
    for (std::size_t k = 0; k < xs.size(); ++k) axpy(f, f.neg(view.side[k]), L.row(xs[k]), w);
    return w;
}

}  // namespace

LocalCode code_Ci(const IcsiInstance& inst, const FqMatrix& L, std::size_t i) {
    check_receiver(inst, L, i);
    std::vector<std::size_t> rows{inst.f[i]};
    for (std::size_t j : y_set(inst, i)) rows.push_back(j);
    LocalCode out;
    out.generator = L.select_rows(rows);
    out.parity_check = kernel_basis(out.generator);
    return out;
}

Vec syndrome(const IcsiInstance& inst, const FqMatrix& L, const FqMatrix& H, const ReceiverView& view) {
    check_view(inst, L, view);
    if (H.cols() != L.cols()) throw InvalidInput("parity-check width does not match code length");
    return mat_vec(H, strip_side(inst, L, view, {}));
}

CosetSolution min_weight_coset_solution(const FqMatrix& H, std::span<const Elem> beta, std::size_t delta,
                                        std::uint64_t budget) {
    if (beta.size() != H.rows()) throw InvalidInput("syndrome length does not match parity-check rows");
    const FieldSpec& f = H.field();
    const std::size_t N = H.cols();
    const std::size_t r = H.rows();
    const std::size_t wmax = std::min(delta, N);
    if (sphere_volume(f.q(), N, wmax) > budget)
        throw BudgetExceeded("coset search over " + std::to_string(wmax) + "-error patterns exceeds budget");

    std::vector<Vec> cols(N);
    for (std::size_t c = 0; c < N; ++c) cols[c] = H.col_vec(c);

    CosetSolution out;
    Vec s(r);
    for (std::size_t w = 0; w <= wmax; ++w) {
        out.weight_searched = w;
        std::vector<std::size_t> support(w);
        for (std::size_t k = 0; k < w; ++k) support[k] = k;
        while (true) {
            Vec digits(w, 0);  // value - 1
            do {
                ++out.candidates;
                std::fill(s.begin(), s.end(), 0);
                for (std::size_t k = 0; k < w; ++k) axpy(f, digits[k] + 1, cols[support[k]], s);
                if (std::equal(s.begin(), s.end(), beta.begin())) {
                    out.e_hat.assign(N, 0);
                    for (std::size_t k = 0; k < w; ++k) out.e_hat[support[k]] = digits[k] + 1;
                    return out;
                }
            } while (odometer_next(digits, f.q() - 1));
            // next support in lexicographic order
            std::size_t k = w;
            while (k > 0 && support[k - 1] == N - w + k - 1) --k;
            if (k == 0) break;
            ++support[k - 1];
            for (std::size_t j = k; j < w; ++j) support[j] = support[j - 1] + 1;
        }
    }
    throw TooManyErrors("no error pattern of weight <= " + std::to_string(delta) + " matches the syndrome");
}

Combiner find_combiner(const IcsiInstance& inst, const FqMatrix& L, std::size_t i) {
    check_receiver(inst, L, i);
    const FieldSpec& f = L.field();
    const auto& xs = inst.X[i];
    const std::size_t N = L.cols();
    FqMatrix A(f, inst.n, N + xs.size());
    for (std::size_t r = 0; r < inst.n; ++r)
        for (std::size_t c = 0; c < N; ++c) A.set(r, c, L.at(r, c));
    for (std::size_t k = 0; k < xs.size(); ++k) A.set(xs[k], N + k, f.neg(1));
    Vec target(inst.n, 0);
    target[inst.f[i]] = 1;
    auto sol = solve_one(A, target);
    if (!sol)
        throw NotAnIndexCode("receiver " + std::to_string(i + 1) + " cannot recover x_" +
                             std::to_string(inst.f[i] + 1) + " from this code");
    Combiner out;
    out.u.assign(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(N));
    out.v.assign(inst.n, 0);
    for (std::size_t k = 0; k < xs.size(); ++k) out.v[xs[k]] = (*sol)[N + k];
    return out;
}

Elem recover(const IcsiInstance& inst, const FqMatrix& L, const Combiner& comb, const ReceiverView& view,
             std::span<const Elem> e_hat) {
    check_view(inst, L, view);
    const FieldSpec& f = L.field();
    Vec w = view.y;
    for (std::size_t c = 0; c < w.size(); ++c) w[c] = f.sub(w[c], e_hat[c]);
    Elem x = dot(f, w, comb.u);
    const auto& xs = inst.X[view.i];
    for (std::size_t k = 0; k < xs.size(); ++k) x = f.sub(x, f.mul(view.side[k], comb.v[xs[k]]));
    return x;
}

Elem recover_by_elimination(const IcsiInstance& inst, const FqMatrix& L, const ReceiverView& view,
                            std::span<const Elem> e_hat) {
    check_view(inst, L, view);
    const Vec target = strip_side(inst, L, view, e_hat);
    const Subset known = side_mask(inst, view.i);
    std::vector<std::size_t> unknown;
    std::size_t pos_f = 0;
    for (std::size_t j = 0; j < inst.n; ++j) {
        if (known & bit(j)) continue;
        if (j == inst.f[view.i]) pos_f = unknown.size();
        unknown.push_back(j);
    }
    auto sol = solve_one(L.select_rows(unknown).transpose(), target);
    if (!sol) throw NotAnIndexCode("received word is inconsistent with the side information");
    return (*sol)[pos_f];
}

std::vector<Vec> relevant_error_set(const IcsiInstance& inst, const FqMatrix& L, std::size_t i,
                                    std::span<const Elem> eps, std::uint64_t cap) {
    check_receiver(inst, L, i);
    if (eps.size() != L.cols()) throw InvalidInput("error pattern length does not match code length");
    const auto ys = y_set(inst, i);
    std::vector<Vec> out;
    if (ys.empty()) {
        out.emplace_back(eps.begin(), eps.end());
        return out;
    }
    if (pow_saturating(L.field().q(), ys.size()) > cap) throw BudgetExceeded("relevant error set exceeds cap");
    const FieldSpec& f = L.field();
    Vec coeffs(ys.size(), 0);
    do {
        Vec e(eps.begin(), eps.end());
        for (std::size_t k = 0; k < ys.size(); ++k) axpy(f, coeffs[k], L.row(ys[k]), e);
        out.push_back(std::move(e));
    } while (odometer_next(coeffs, f.q()));
    return out;
}

Decoder::Decoder(IcsiInstance inst, FqMatrix L, std::size_t delta, std::uint64_t budget)
    : inst_(std::move(inst)), L_(std::move(L)), delta_(delta), budget_(budget) {
    validate(inst_);
    if (L_.rows() != inst_.n) throw InvalidInput("matrix row count does not match the instance");
    receivers_.resize(inst_.m);
    for (std::size_t i = 0; i < inst_.m; ++i) {
        receivers_[i].H = code_Ci(inst_, L_, i).parity_check;
        try {
            receivers_[i].combiner = find_combiner(inst_, L_, i);
        } catch (const NotAnIndexCode& e) {
            receivers_[i].combiner_error = e.what();
        }
    }
}

DecodeResult Decoder::decode(const ReceiverView& view) const {
    check_view(inst_, L_, view);
    const auto& rc = receivers_[view.i];
    if (!rc.combiner) throw NotAnIndexCode(rc.combiner_error);
    DecodeResult out;
    out.syndrome = mat_vec(rc.H, strip_side(inst_, L_, view, {}));
    auto sol = min_weight_coset_solution(rc.H, out.syndrome, delta_, budget_);
    out.e_hat = std::move(sol.e_hat);
    out.weight_searched = sol.weight_searched;
    out.candidates = sol.candidates;
    out.combiner = rc.combiner->u;
    out.x_hat = recover(inst_, L_, *rc.combiner, view, out.e_hat);
    return out;
}

ReceiverView Decoder::view_for(std::size_t i, std::span<const Elem> x, std::span<const Elem> eps) const {
    if (x.size() != inst_.n || eps.size() != L_.cols()) throw InvalidInput("message or error has wrong length");
    ReceiverView v;
    v.i = i;
    v.y = vec_mat(x, L_);
    for (std::size_t c = 0; c < v.y.size(); ++c) v.y[c] = L_.field().add(v.y[c], eps[c]);
    for (std::size_t j : inst_.X[i]) v.side.push_back(x[j]);
    return v;
}

DecodeResult decode(const IcsiInstance& inst, const FqMatrix& L, std::size_t delta, const ReceiverView& view) {
    return Decoder(inst, L, delta).decode(view);
}

}  // namespace icsi

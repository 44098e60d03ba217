#include "qsurf/blossom.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qsurf {

namespace {
constexpr long long INF = std::numeric_limits<long long>::max() / 4;
}

void BlossomSolver::update_slack(int u, int x) {
    if (!slack_[x] || e_delta(g(u, x)) < e_delta(g(slack_[x], x))) slack_[x] = u;
}

void BlossomSolver::set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u)
        if (g(u, x).w > 0 && st_[u] != x && S_[st_[u]] == 0) update_slack(u, x);
}

void BlossomSolver::q_push(int x) {
    if (x <= n_)
        queue_.push_back(x);
    else
        for (int y : flower_[x]) q_push(y);
}

void BlossomSolver::set_st(int x, int b) {
    st_[x] = b;
    if (x > n_)
        for (int y : flower_[x]) set_st(y, b);
}

int BlossomSolver::get_pr(int b, int xr) {
    int pr = int(std::find(flower_[b].begin(), flower_[b].end(), xr) - flower_[b].begin());
    if (pr % 2 == 1) {
        std::reverse(flower_[b].begin() + 1, flower_[b].end());
        return int(flower_[b].size()) - pr;
    }
    return pr;
}

void BlossomSolver::set_match(int u, int v) {
    match_[u] = g(u, v).v;
    if (u <= n_) return;
    Edge& e = g(u, v);
    int xr = flower_from_[u][e.u];
    int pr = get_pr(u, xr);
    for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
    set_match(xr, v);
    std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
}

void BlossomSolver::augment(int u, int v) {
    for (;;) {
        int xnv = st_[match_[u]];
        set_match(u, v);
        if (!xnv) return;
        set_match(xnv, st_[pa_[xnv]]);
        u = st_[pa_[xnv]];
        v = xnv;
    }
}

int BlossomSolver::get_lca(int u, int v) {
    for (++timer_; u || v; std::swap(u, v)) {
        if (u == 0) continue;
        if (vis_[u] == timer_) return u;
        vis_[u] = timer_;
        u = st_[match_[u]];
        if (u) u = st_[pa_[u]];
    }
    return 0;
}

void BlossomSolver::add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[b]) ++b;
    if (b > n_x_) ++n_x_;
    lab_[b] = 0;
    S_[b] = 0;
    match_[b] = match_[lca];
    flower_[b].clear();
    flower_[b].push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
        flower_[b].push_back(x);
        flower_[b].push_back(y = st_[match_[x]]);
        q_push(y);
    }
    std::reverse(flower_[b].begin() + 1, flower_[b].end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
        flower_[b].push_back(x);
        flower_[b].push_back(y = st_[match_[x]]);
        q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x_; ++x) g(b, x).w = g(x, b).w = 0;
    for (int x = 1; x <= n_; ++x) flower_from_[b][x] = 0;
    for (int xs : flower_[b]) {
        for (int x = 1; x <= n_x_; ++x)
            if (g(b, x).w == 0 || e_delta(g(xs, x)) < e_delta(g(b, x))) {
                g(b, x) = g(xs, x);
                g(x, b) = g(x, xs);
            }
        for (int x = 1; x <= n_; ++x)
            if (flower_from_[xs][x]) flower_from_[b][x] = xs;
    }
    set_slack(b);
}

void BlossomSolver::expand_blossom(int b) {
    for (int x : flower_[b]) set_st(x, x);
    int xr = flower_from_[b][g(b, pa_[b]).u];
    int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
        int xs = flower_[b][i];
        int xns = flower_[b][i + 1];
        pa_[xs] = g(xns, xs).u;
        S_[xs] = 1;
        S_[xns] = 0;
        slack_[xs] = 0;
        set_slack(xns);
        q_push(xns);
    }
    S_[xr] = 1;
    pa_[xr] = pa_[b];
    for (size_t i = size_t(pr) + 1; i < flower_[b].size(); ++i) {
        int xs = flower_[b][i];
        S_[xs] = -1;
        set_slack(xs);
    }
    st_[b] = 0;
}

bool BlossomSolver::on_found_edge(const Edge& e) {
    int u = st_[e.u], v = st_[e.v];
    if (S_[v] == -1) {
        pa_[v] = e.u;
        S_[v] = 1;
        int nu = st_[match_[v]];
        slack_[v] = slack_[nu] = 0;
        S_[nu] = 0;
        q_push(nu);
    } else if (S_[v] == 0) {
        int lca = get_lca(u, v);
        if (!lca) {
            augment(u, v);
            augment(v, u);
            return true;
        }
        add_blossom(u, lca, v);
    }
    return false;
}

bool BlossomSolver::matching() {
    std::fill(S_.begin() + 1, S_.begin() + n_x_ + 1, -1);
    std::fill(slack_.begin() + 1, slack_.begin() + n_x_ + 1, 0);
    queue_.clear();
    q_head_ = 0;
    for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && !match_[x]) {
            pa_[x] = 0;
            S_[x] = 0;
            q_push(x);
        }
    if (queue_.empty()) return false;
    for (;;) {
        while (q_head_ < queue_.size()) {
            int u = queue_[q_head_++];
            if (S_[st_[u]] == 1) continue;
            for (int v = 1; v <= n_; ++v)
                if (g(u, v).w > 0 && st_[u] != st_[v]) {
                    if (e_delta(g(u, v)) == 0) {
                        if (on_found_edge(g(u, v))) return true;
                    } else {
                        update_slack(u, st_[v]);
                    }
                }
        }
        long long d = INF;
        for (int b = n_ + 1; b <= n_x_; ++b)
            if (st_[b] == b && S_[b] == 1) d = std::min(d, lab_[b] / 2);
        for (int x = 1; x <= n_x_; ++x)
            if (st_[x] == x && slack_[x]) {
                if (S_[x] == -1)
                    d = std::min(d, e_delta(g(slack_[x], x)));
                else if (S_[x] == 0)
                    d = std::min(d, e_delta(g(slack_[x], x)) / 2);
            }
        if (d >= INF) throw std::logic_error("blossom: no perfect matching");
        for (int u = 1; u <= n_; ++u) {
            if (S_[st_[u]] == 0) {
                if (lab_[u] <= d) return false;
                lab_[u] -= d;
            } else if (S_[st_[u]] == 1) {
                lab_[u] += d;
            }
        }
        for (int b = n_ + 1; b <= n_x_; ++b)
            if (st_[b] == b) {
                if (S_[b] == 0)
                    lab_[b] += d * 2;
                else if (S_[b] == 1)
                    lab_[b] -= d * 2;
            }
        queue_.clear();
        q_head_ = 0;
        for (int x = 1; x <= n_x_; ++x)
            if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
                e_delta(g(slack_[x], x)) == 0)
                if (on_found_edge(g(slack_[x], x))) return true;
        for (int b = n_ + 1; b <= n_x_; ++b)
            if (st_[b] == b && S_[b] == 1 && lab_[b] == 0) expand_blossom(b);
    }
}

const std::vector<int>& BlossomSolver::solve(int n, const std::vector<long long>& w) {
    if (n % 2 != 0) throw std::invalid_argument("blossom: odd vertex count");
    n_ = n;
    n_x_ = n;
    slots_ = n + n / 2 + 2;
    timer_ = 0;
    g_.assign(size_t(slots_) * slots_, Edge{});
    lab_.assign(slots_, 0);
    match_.assign(slots_, 0);
    slack_.assign(slots_, 0);
    st_.assign(slots_, 0);
    pa_.assign(slots_, 0);
    S_.assign(slots_, 0);
    vis_.assign(slots_, 0);
    flower_.assign(slots_, {});
    flower_from_.assign(slots_, std::vector<int>(n + 1, 0));
    long long w_max = 0;
    for (int u = 1; u <= n; ++u) {
        st_[u] = u;
        flower_from_[u][u] = u;
        for (int v = 1; v <= n; ++v) {
            // Doubled weights keep every dual value integral.
            long long wi = w[size_t(u - 1) * n + (v - 1)] * 2;
            g(u, v) = {u, v, wi};
            w_max = std::max(w_max, wi);
        }
    }
    for (int u = 1; u <= n; ++u) lab_[u] = w_max;
    while (matching()) {
    }
    return match_;
}

}  // namespace qsurf

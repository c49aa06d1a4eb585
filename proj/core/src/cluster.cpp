#include "portrisk/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "portrisk/errors.hpp"
#include "portrisk/parallel.hpp"

namespace portrisk {

void ClusterParams::validate() const {
    if (min_cluster_size < 2)
        throw ConfigError("min_cluster_size must be >= 2");
    if (min_samples < 1)
        throw ConfigError("min_samples must be >= 1");
}

int ClusterLabeling::label_of(const std::string& port_id) const {
    auto it = labels.find(port_id);
    if (it == labels.end())
        throw AlignmentError("no cluster label for port " + port_id);
    return it->second;
}

std::vector<double> core_distances(const std::vector<std::vector<double>>& points, int k) {
    if (points.empty()) throw EmptyDatasetError("core_distances: no points");
    if (k < 1) throw DomainError("core_distances: k must be >= 1");
    const std::size_t n = points.size();
    std::vector<double> out(n, 0.0);
    if (n == 1) return out;  // no neighbours; density undefined, use 0

    parallel_for(n, [&](std::size_t i) {
        std::vector<double> d;
        d.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            d.push_back(env_distance(points[i], points[j]));
        }
        const std::size_t kth = std::min<std::size_t>(static_cast<std::size_t>(k), d.size());
        std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(kth - 1), d.end());
        out[i] = d[kth - 1];
    });
    return out;
}

Matrix pairwise_distances(const std::vector<std::vector<double>>& points) {
    const std::size_t n = points.size();
    Matrix dist(n, n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = env_distance(points[i], points[j]);
            dist(i, j) = d;
            dist(j, i) = d;
        }
    });
    return dist;
}

std::vector<MstEdge> minimum_spanning_tree(const Matrix& dist) {
    const std::size_t n = dist.rows();
    std::vector<MstEdge> edges;
    if (n < 2) return edges;
    edges.reserve(n - 1);

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> best(n, kInf);
    std::vector<int> parent(n, -1);
    std::vector<char> done(n, 0);
    best[0] = 0.0;

    for (std::size_t step = 0; step < n; ++step) {
        std::size_t u = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && (u == n || best[i] < best[u])) u = i;
        done[u] = 1;
        if (parent[u] >= 0)
            edges.push_back({parent[u], static_cast<int>(u), best[u]});
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v]) continue;
            const double w = dist(u, v);
            if (w < best[v]) {
                best[v] = w;
                parent[v] = static_cast<int>(u);
            }
        }
    }
    return edges;
}

namespace {

struct LinkageNode {
    int left = -1;
    int right = -1;
    double dist = 0.0;
    int size = 0;
};

// path-compressing union-find over point ids for dendrogram construction
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
};

// scipy-style linkage from MST edges sorted ascending; node ids are
// 0..n-1 for points and n+i for the i-th merge
std::vector<LinkageNode> single_linkage(std::vector<MstEdge> mst, int n) {
    std::sort(mst.begin(), mst.end(), [](const MstEdge& a, const MstEdge& b) {
        const int alo = std::min(a.u, a.v), ahi = std::max(a.u, a.v);
        const int blo = std::min(b.u, b.v), bhi = std::max(b.u, b.v);
        if (a.w != b.w) return a.w < b.w;
        if (alo != blo) return alo < blo;
        return ahi < bhi;
    });

    std::vector<LinkageNode> dendro;
    dendro.reserve(mst.size());
    Dsu dsu(static_cast<std::size_t>(n));
    std::vector<int> rep_node(static_cast<std::size_t>(n));  // dsu root -> current dendro node id
    std::iota(rep_node.begin(), rep_node.end(), 0);

    auto node_size = [&](int id) { return id < n ? 1 : dendro[static_cast<std::size_t>(id - n)].size; };

    for (const auto& e : mst) {
        const int ru = dsu.find(e.u);
        const int rv = dsu.find(e.v);
        LinkageNode ln;
        ln.left = rep_node[static_cast<std::size_t>(ru)];
        ln.right = rep_node[static_cast<std::size_t>(rv)];
        ln.dist = e.w;
        ln.size = node_size(ln.left) + node_size(ln.right);
        const int new_id = n + static_cast<int>(dendro.size());
        dendro.push_back(ln);
        dsu.parent[static_cast<std::size_t>(ru)] = rv;
        rep_node[static_cast<std::size_t>(dsu.find(rv))] = new_id;
    }
    return dendro;
}

struct CondensedRow {
    int parent = 0;
    int child = 0;
    double lambda = 0.0;
    int size = 0;
};

// caps lambda so coincident points do not produce infinities
double lambda_of(double dist) { return 1.0 / std::max(dist, 1e-12); }

struct CondensedTree {
    std::vector<CondensedRow> rows;
    int root = 0;
    int next_label = 0;
};

CondensedTree condense_tree(const std::vector<LinkageNode>& dendro, int n, int mcs) {
    CondensedTree ct;
    ct.root = n;
    ct.next_label = n + 1;
    if (dendro.empty()) return ct;

    const int root_node = n + static_cast<int>(dendro.size()) - 1;
    std::vector<int> relabel(static_cast<std::size_t>(2 * n - 1), -1);
    relabel[static_cast<std::size_t>(root_node)] = n;
    std::vector<char> ignore(static_cast<std::size_t>(2 * n - 1), 0);

    auto node_size = [&](int id) { return id < n ? 1 : dendro[static_cast<std::size_t>(id - n)].size; };

    // collect leaves under `id`, marking the whole subtree ignored
    auto fall_out = [&](int id, int parent_label, double lambda) {
        std::vector<int> stack{id};
        while (!stack.empty()) {
            const int cur = stack.back();
            stack.pop_back();
            ignore[static_cast<std::size_t>(cur)] = 1;
            if (cur < n) {
                ct.rows.push_back({parent_label, cur, lambda, 1});
            } else {
                const auto& ln = dendro[static_cast<std::size_t>(cur - n)];
                stack.push_back(ln.left);
                stack.push_back(ln.right);
            }
        }
    };

    // BFS top-down so parents are processed before children
    std::vector<int> order;
    order.reserve(dendro.size());
    std::vector<int> queue{root_node};
    std::size_t head = 0;
    while (head < queue.size()) {
        const int cur = queue[head++];
        if (cur < n) continue;
        order.push_back(cur);
        const auto& ln = dendro[static_cast<std::size_t>(cur - n)];
        queue.push_back(ln.left);
        queue.push_back(ln.right);
    }

    for (int node : order) {
        if (ignore[static_cast<std::size_t>(node)]) continue;
        const auto& ln = dendro[static_cast<std::size_t>(node - n)];
        const double lambda = lambda_of(ln.dist);
        const int label = relabel[static_cast<std::size_t>(node)];
        const int lc = node_size(ln.left);
        const int rc = node_size(ln.right);

        if (lc >= mcs && rc >= mcs) {
            // true split: both sides become new clusters
            relabel[static_cast<std::size_t>(ln.left)] = ct.next_label++;
            ct.rows.push_back({label, relabel[static_cast<std::size_t>(ln.left)], lambda, lc});
            relabel[static_cast<std::size_t>(ln.right)] = ct.next_label++;
            ct.rows.push_back({label, relabel[static_cast<std::size_t>(ln.right)], lambda, rc});
        } else if (lc < mcs && rc < mcs) {
            fall_out(ln.left, label, lambda);
            fall_out(ln.right, label, lambda);
        } else if (lc < mcs) {
            relabel[static_cast<std::size_t>(ln.right)] = label;  // cluster continues
            fall_out(ln.left, label, lambda);
        } else {
            relabel[static_cast<std::size_t>(ln.left)] = label;
            fall_out(ln.right, label, lambda);
        }
    }
    return ct;
}

}  // namespace

ClusterLabeling cluster(const std::vector<FeatureVector>& features,
                        const ClusterParams& params) {
    params.validate();
    if (features.empty()) throw EmptyDatasetError("cluster: no feature vectors");

    const int n = static_cast<int>(features.size());
    ClusterLabeling out;
    out.port_order.reserve(features.size());
    for (const auto& f : features) out.port_order.push_back(f.port_id);

    auto all_noise = [&] {
        for (const auto& id : out.port_order) out.labels[id] = -1;
        return out;
    };

    // documented degenerate case: not enough points for the density estimate
    if (params.min_samples > n || n < 2) return all_noise();

    std::vector<std::vector<double>> points;
    points.reserve(features.size());
    for (const auto& f : features) points.push_back(f.values);

    const std::vector<double> core = core_distances(points, params.min_samples);

    Matrix mreach(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 0.0);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        for (std::size_t j = i + 1; j < static_cast<std::size_t>(n); ++j) {
            const double m = mutual_reachability(env_distance(points[i], points[j]),
                                                 core[i], core[j]);
            mreach(i, j) = m;
            mreach(j, i) = m;
        }
    });

    const auto mst = minimum_spanning_tree(mreach);
    const auto dendro = single_linkage(mst, n);
    const auto ct = condense_tree(dendro, n, params.min_cluster_size);

    // excess-of-mass stability per condensed cluster
    std::map<int, double> birth;
    birth[ct.root] = 0.0;
    for (const auto& r : ct.rows)
        if (r.child >= n) birth[r.child] = r.lambda;

    std::map<int, double> stability;
    for (int c = ct.root; c < ct.next_label; ++c) stability[c] = 0.0;
    for (const auto& r : ct.rows)
        stability[r.parent] += (r.lambda - birth[r.parent]) * r.size;

    // cluster-tree children per cluster
    std::map<int, std::vector<int>> kids;
    for (const auto& r : ct.rows)
        if (r.child >= n) kids[r.parent].push_back(r.child);

    // select bottom-up (ids descend from leaves to root); root never selectable
    std::map<int, char> selected;
    std::map<int, double> scratch = stability;
    for (int c = ct.next_label - 1; c > ct.root; --c) {
        double subtree = 0.0;
        auto it = kids.find(c);
        if (it != kids.end())
            for (int k : it->second) subtree += scratch[k];
        if (it != kids.end() && subtree > scratch[c]) {
            selected[c] = 0;
            scratch[c] = subtree;
        } else {
            selected[c] = 1;
            // deselect every descendant
            std::vector<int> stack;
            if (it != kids.end()) stack = it->second;
            while (!stack.empty()) {
                const int d = stack.back();
                stack.pop_back();
                selected[d] = 0;
                auto kt = kids.find(d);
                if (kt != kids.end())
                    for (int k : kt->second) stack.push_back(k);
            }
        }
    }

    // map each point to its nearest selected ancestor cluster
    std::map<int, int> up;  // condensed child -> parent, cut at selected clusters
    for (const auto& r : ct.rows)
        if (!(r.child >= n && selected[r.child])) up[r.child] = r.parent;

    auto resolve = [&](int point) {
        int cur = point;
        while (true) {
            auto it = up.find(cur);
            if (it == up.end()) return cur;
            cur = it->second;
        }
    };

    // relabel selected clusters 1..K by first member appearance
    std::map<int, int> final_label;
    int next_final = 1;
    for (int i = 0; i < n; ++i) {
        const int top = resolve(i);
        int label = -1;
        if (top != ct.root && selected.count(top) && selected[top]) {
            auto it = final_label.find(top);
            if (it == final_label.end()) {
                final_label[top] = next_final;
                out.stabilities[next_final] = stability[top];
                label = next_final;
                ++next_final;
            } else {
                label = it->second;
            }
        }
        out.labels[out.port_order[static_cast<std::size_t>(i)]] = label;
    }
    return out;
}

}  // namespace portrisk

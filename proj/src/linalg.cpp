#include "integralis/linalg.hpp"

#include <stdexcept>

namespace integralis {

namespace {

struct Eliminated {
    std::vector<int> pivotCols;  // per pivot row
    int rows, cols;
};

// In-place forward elimination with unit pivots; returns pivot columns.
Eliminated eliminate(RFMatrix& A, std::vector<RatFun>* rhs) {
    int m = static_cast<int>(A.size());
    int n = m ? static_cast<int>(A[0].size()) : 0;
    Eliminated out{{}, m, n};
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int pr = -1;
        for (int r = row; r < m; ++r) {
            if (!A[r][col].isZero()) {
                pr = r;
                break;
            }
        }
        if (pr < 0) continue;
        std::swap(A[row], A[pr]);
        if (rhs) std::swap((*rhs)[row], (*rhs)[pr]);
        RatFun inv = RatFun(Rational(1)) / A[row][col];
        for (int c = col; c < n; ++c) A[row][c] = A[row][c] * inv;
        if (rhs) (*rhs)[row] = (*rhs)[row] * inv;
        for (int r = 0; r < m; ++r) {
            if (r == row || A[r][col].isZero()) continue;
            RatFun f = A[r][col];
            for (int c = col; c < n; ++c) A[r][c] = A[r][c] - f * A[row][c];
            if (rhs) (*rhs)[r] = (*rhs)[r] - f * (*rhs)[row];
        }
        out.pivotCols.push_back(col);
        ++row;
    }
    return out;
}

} // namespace

LinearSolution solveLinearRF(RFMatrix A, std::vector<RatFun> rhs, int numUnknowns) {
    if (A.size() != rhs.size()) throw std::invalid_argument("matrix/rhs size mismatch");
    int m = static_cast<int>(A.size());
    int n = m ? static_cast<int>(A[0].size()) : std::max(numUnknowns, 0);
    if (m == 0) {
        LinearSolution s;
        s.consistent = true;
        s.rank = 0;
        s.particular.assign(n, RatFun(Rational(0)));
        for (int c = 0; c < n; ++c) {
            std::vector<RatFun> v(n, RatFun(Rational(0)));
            v[c] = RatFun(Rational(1));
            s.nullspace.push_back(std::move(v));
        }
        return s;
    }
    Eliminated e = eliminate(A, &rhs);
    LinearSolution s;
    s.rank = static_cast<int>(e.pivotCols.size());
    // consistency: zero rows must have zero rhs
    for (int r = s.rank; r < m; ++r) {
        if (!rhs[r].isZero()) {
            s.consistent = false;
            return s;
        }
    }
    s.consistent = true;
    std::vector<bool> isPivot(n, false);
    for (int c : e.pivotCols) isPivot[c] = true;
    s.particular.assign(n, RatFun(Rational(0)));
    for (int pr = 0; pr < s.rank; ++pr) s.particular[e.pivotCols[pr]] = rhs[pr];
    for (int c = 0; c < n; ++c) {
        if (isPivot[c]) continue;
        std::vector<RatFun> v(n, RatFun(Rational(0)));
        v[c] = RatFun(Rational(1));
        for (int pr = 0; pr < s.rank; ++pr) v[e.pivotCols[pr]] = -A[pr][c];
        s.nullspace.push_back(std::move(v));
    }
    return s;
}

int rankRF(RFMatrix A) {
    if (A.empty()) return 0;
    Eliminated e = eliminate(A, nullptr);
    return static_cast<int>(e.pivotCols.size());
}

int rankBareissPoly(std::vector<std::vector<Polynomial>> M) {
    int m = static_cast<int>(M.size());
    int n = m ? static_cast<int>(M[0].size()) : 0;
    Polynomial prev(Rational(1));
    int rank = 0;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int pr = -1;
        for (int r = row; r < m; ++r) {
            if (!M[r][col].isZero()) {
                pr = r;
                break;
            }
        }
        if (pr < 0) continue;
        std::swap(M[row], M[pr]);
        for (int r = row + 1; r < m; ++r) {
            for (int c = col + 1; c < n; ++c) {
                Polynomial t = M[r][c] * M[row][col] - M[r][col] * M[row][c];
                Polynomial q;
                if (!t.tryDivideExact(prev, q))
                    throw std::logic_error("bareiss: inexact division");
                M[r][c] = q;
            }
            M[r][col] = Polynomial();
        }
        prev = M[row][col];
        ++rank;
        ++row;
    }
    return rank;
}

RatFun detRF(const RFMatrix& M) {
    int n = static_cast<int>(M.size());
    if (n == 0) return RatFun(Rational(1));
    for (auto& row : M)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("det of non-square matrix");
    // clear each row's denominators, tracking the factor
    std::vector<std::vector<Polynomial>> P(n, std::vector<Polynomial>(n));
    RatFun cleared(Rational(1));
    for (int r = 0; r < n; ++r) {
        Polynomial commonDen(Rational(1));
        for (int c = 0; c < n; ++c) {
            Polynomial g = polyGcd(commonDen, M[r][c].den());
            Polynomial q;
            M[r][c].den().tryDivideExact(g, q);
            commonDen = commonDen * q;
        }
        for (int c = 0; c < n; ++c) {
            Polynomial q;
            if (!commonDen.tryDivideExact(M[r][c].den(), q))
                throw std::logic_error("detRF: lcm does not divide");
            P[r][c] = M[r][c].num() * q;
        }
        cleared = cleared * RatFun(commonDen);
    }
    // Bareiss
    Polynomial prev(Rational(1));
    Rational sign(1);
    for (int k = 0; k < n - 1; ++k) {
        if (P[k][k].isZero()) {
            int pr = -1;
            for (int r = k + 1; r < n; ++r)
                if (!P[r][k].isZero()) {
                    pr = r;
                    break;
                }
            if (pr < 0) return RatFun(Rational(0));
            std::swap(P[k], P[pr]);
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c) {
                Polynomial t = P[r][c] * P[k][k] - P[r][k] * P[k][c];
                Polynomial q;
                if (!t.tryDivideExact(prev, q)) throw std::logic_error("bareiss: inexact division");
                P[r][c] = q;
            }
            P[r][k] = Polynomial();
        }
        prev = P[k][k];
    }
    return RatFun(P[n - 1][n - 1] * sign) / cleared;
}

std::optional<MinorCertificate> nonzeroMinor(const RFMatrix& M, int q) {
    int m = static_cast<int>(M.size());
    int n = m ? static_cast<int>(M[0].size()) : 0;
    if (q == 0) return MinorCertificate{{}, {}, RatFun(Rational(1))};
    if (q > m || q > n) return std::nullopt;
    // elimination with row tracking
    RFMatrix A = M;
    std::vector<int> rowIdx(m);
    for (int i = 0; i < m; ++i) rowIdx[i] = i;
    std::vector<int> pivotRows, pivotCols;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int pr = -1;
        for (int r = row; r < m; ++r)
            if (!A[r][col].isZero()) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(A[row], A[pr]);
        std::swap(rowIdx[row], rowIdx[pr]);
        for (int r = row + 1; r < m; ++r) {
            if (A[r][col].isZero()) continue;
            RatFun f = A[r][col] / A[row][col];
            for (int c = col; c < n; ++c) A[r][c] = A[r][c] - f * A[row][c];
        }
        pivotRows.push_back(rowIdx[row]);
        pivotCols.push_back(col);
        ++row;
        if (static_cast<int>(pivotCols.size()) == q) break;
    }
    if (static_cast<int>(pivotCols.size()) < q) return std::nullopt;
    MinorCertificate cert;
    cert.rows.assign(pivotRows.begin(), pivotRows.begin() + q);
    cert.cols.assign(pivotCols.begin(), pivotCols.begin() + q);
    std::sort(cert.rows.begin(), cert.rows.end());
    std::sort(cert.cols.begin(), cert.cols.end());
    RFMatrix sub(q, std::vector<RatFun>(q));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) sub[i][j] = M[cert.rows[i]][cert.cols[j]];
    cert.value = detRF(sub);
    if (cert.value.isZero()) return std::nullopt; // should not happen
    return cert;
}

QLinearSolution solveLinearQ(QMatrix A, std::vector<Rational> rhs) {
    if (A.size() != rhs.size()) throw std::invalid_argument("matrix/rhs size mismatch");
    int m = static_cast<int>(A.size());
    int n = m ? static_cast<int>(A[0].size()) : 0;
    QLinearSolution s;
    if (m == 0) {
        s.consistent = true;
        return s;
    }
    std::vector<int> pivotCols;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int pr = -1;
        for (int r = row; r < m; ++r)
            if (A[r][col] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(A[row], A[pr]);
        std::swap(rhs[row], rhs[pr]);
        Rational inv = 1 / A[row][col];
        for (int c = col; c < n; ++c) A[row][c] *= inv;
        rhs[row] *= inv;
        for (int r = 0; r < m; ++r) {
            if (r == row || A[r][col] == 0) continue;
            Rational f = A[r][col];
            for (int c = col; c < n; ++c) A[r][c] -= f * A[row][c];
            rhs[r] -= f * rhs[row];
        }
        pivotCols.push_back(col);
        ++row;
    }
    s.rank = static_cast<int>(pivotCols.size());
    for (int r = s.rank; r < m; ++r)
        if (rhs[r] != 0) {
            s.consistent = false;
            return s;
        }
    s.consistent = true;
    std::vector<bool> isPivot(n, false);
    for (int c : pivotCols) isPivot[c] = true;
    s.particular.assign(n, Rational(0));
    for (int pr = 0; pr < s.rank; ++pr) s.particular[pivotCols[pr]] = rhs[pr];
    for (int c = 0; c < n; ++c) {
        if (isPivot[c]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[c] = 1;
        for (int pr = 0; pr < s.rank; ++pr) v[pivotCols[pr]] = -A[pr][c];
        s.nullspace.push_back(std::move(v));
    }
    return s;
}

} // namespace integralis

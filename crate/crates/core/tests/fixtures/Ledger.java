import java.util.ArrayList;
import java.util.HashMap;
import java.util.List;
import java.util.Map;

public class Ledger {
    private final Map<String, Double> balances = new HashMap<>();
    private final List<String> journal = new ArrayList<>();
    private double feeRate = 0.015;
    private int overdrafts;

    public double settle(String account, double[] amounts, double limit, int mode) {
        double total = balances.getOrDefault(account, 0.0);
        journal.add("settle " + account);

        double acc0 = 0;
        for (int i0 = 0; i0 < amounts.length; i0++) {
            double a = amounts[i0];
            if (a > limit) {
                acc0 += limit;
                journal.add("cap 0 " + a);
            } else if (a < 0) {
                acc0 -= a * feeRate;
                overdrafts++;
            } else {
                acc0 += a;
            }
            if (acc0 > limit * 2 && i0 % 2 == 0) {
                acc0 = acc0 / 2;
                continue;
            }
            total += a * 7;
        }
        switch (mode) {
            case 0:
                total += acc0;
                break;
            case 1:
                total -= acc0 * feeRate;
                break;
            default:
                total = total * 0.6 + acc0;
        }
        try {
            if (total > limit || acc0 < 0) {
                journal.add("check 0 " + total);
            }
            balances.put(account + "-0", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        double acc1 = 0;
        for (int i1 = 0; i1 < amounts.length; i1++) {
            double a = amounts[i1];
            if (a > limit) {
                acc1 += limit;
                journal.add("cap 1 " + a);
            } else if (a < 0) {
                acc1 -= a * feeRate;
                overdrafts++;
            } else {
                acc1 += a;
            }
            if (acc1 > limit * 3 && i1 % 2 == 0) {
                acc1 = acc1 / 2;
                continue;
            }
            total += a * 8;
        }
        switch (mode) {
            case 0:
                total += acc1;
                break;
            case 1:
                total -= acc1 * feeRate;
                break;
            default:
                total = total * 0.5 + acc1;
        }
        try {
            if (total > limit || acc1 < 0) {
                journal.add("check 1 " + total);
            }
            balances.put(account + "-1", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        if (total < 0) {
            overdrafts++;
            total = 0;
        }
        return total;
    }

    public double reconcile(String account, double[] amounts, double limit, int mode) {
        double total = balances.getOrDefault(account, 0.0);
        journal.add("reconcile " + account);

        double acc2 = 0;
        for (int i2 = 0; i2 < amounts.length; i2++) {
            double a = amounts[i2];
            if (a > limit) {
                acc2 += limit;
                journal.add("cap 2 " + a);
            } else if (a < 0) {
                acc2 -= a * feeRate;
                overdrafts++;
            } else {
                acc2 += a;
            }
            if (acc2 > limit * 4 && i2 % 2 == 0) {
                acc2 = acc2 / 2;
                continue;
            }
            total += a * 3;
        }
        switch (mode) {
            case 0:
                total += acc2;
                break;
            case 1:
                total -= acc2 * feeRate;
                break;
            default:
                total = total * 0.9 + acc2;
        }
        try {
            if (total > limit || acc2 < 0) {
                journal.add("check 2 " + total);
            }
            balances.put(account + "-2", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        double acc3 = 0;
        for (int i3 = 0; i3 < amounts.length; i3++) {
            double a = amounts[i3];
            if (a > limit) {
                acc3 += limit;
                journal.add("cap 3 " + a);
            } else if (a < 0) {
                acc3 -= a * feeRate;
                overdrafts++;
            } else {
                acc3 += a;
            }
            if (acc3 > limit * 5 && i3 % 2 == 0) {
                acc3 = acc3 / 2;
                continue;
            }
            total += a * 3;
        }
        switch (mode) {
            case 0:
                total += acc3;
                break;
            case 1:
                total -= acc3 * feeRate;
                break;
            default:
                total = total * 0.7 + acc3;
        }
        try {
            if (total > limit || acc3 < 0) {
                journal.add("check 3 " + total);
            }
            balances.put(account + "-3", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        if (total < 0) {
            overdrafts++;
            total = 0;
        }
        return total;
    }

    public double accrue(String account, double[] amounts, double limit, int mode) {
        double total = balances.getOrDefault(account, 0.0);
        journal.add("accrue " + account);

        double acc4 = 0;
        for (int i4 = 0; i4 < amounts.length; i4++) {
            double a = amounts[i4];
            if (a > limit) {
                acc4 += limit;
                journal.add("cap 4 " + a);
            } else if (a < 0) {
                acc4 -= a * feeRate;
                overdrafts++;
            } else {
                acc4 += a;
            }
            if (acc4 > limit * 6 && i4 % 2 == 0) {
                acc4 = acc4 / 2;
                continue;
            }
            total += a * 2;
        }
        switch (mode) {
            case 0:
                total += acc4;
                break;
            case 1:
                total -= acc4 * feeRate;
                break;
            default:
                total = total * 0.9 + acc4;
        }
        try {
            if (total > limit || acc4 < 0) {
                journal.add("check 4 " + total);
            }
            balances.put(account + "-4", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        double acc5 = 0;
        for (int i5 = 0; i5 < amounts.length; i5++) {
            double a = amounts[i5];
            if (a > limit) {
                acc5 += limit;
                journal.add("cap 5 " + a);
            } else if (a < 0) {
                acc5 -= a * feeRate;
                overdrafts++;
            } else {
                acc5 += a;
            }
            if (acc5 > limit * 7 && i5 % 2 == 0) {
                acc5 = acc5 / 2;
                continue;
            }
            total += a * 5;
        }
        switch (mode) {
            case 0:
                total += acc5;
                break;
            case 1:
                total -= acc5 * feeRate;
                break;
            default:
                total = total * 0.5 + acc5;
        }
        try {
            if (total > limit || acc5 < 0) {
                journal.add("check 5 " + total);
            }
            balances.put(account + "-5", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        if (total < 0) {
            overdrafts++;
            total = 0;
        }
        return total;
    }

    public double rebalance(String account, double[] amounts, double limit, int mode) {
        double total = balances.getOrDefault(account, 0.0);
        journal.add("rebalance " + account);

        double acc6 = 0;
        for (int i6 = 0; i6 < amounts.length; i6++) {
            double a = amounts[i6];
            if (a > limit) {
                acc6 += limit;
                journal.add("cap 6 " + a);
            } else if (a < 0) {
                acc6 -= a * feeRate;
                overdrafts++;
            } else {
                acc6 += a;
            }
            if (acc6 > limit * 8 && i6 % 2 == 0) {
                acc6 = acc6 / 2;
                continue;
            }
            total += a * 3;
        }
        switch (mode) {
            case 0:
                total += acc6;
                break;
            case 1:
                total -= acc6 * feeRate;
                break;
            default:
                total = total * 0.8 + acc6;
        }
        try {
            if (total > limit || acc6 < 0) {
                journal.add("check 6 " + total);
            }
            balances.put(account + "-6", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        double acc7 = 0;
        for (int i7 = 0; i7 < amounts.length; i7++) {
            double a = amounts[i7];
            if (a > limit) {
                acc7 += limit;
                journal.add("cap 7 " + a);
            } else if (a < 0) {
                acc7 -= a * feeRate;
                overdrafts++;
            } else {
                acc7 += a;
            }
            if (acc7 > limit * 9 && i7 % 2 == 0) {
                acc7 = acc7 / 2;
                continue;
            }
            total += a * 8;
        }
        switch (mode) {
            case 0:
                total += acc7;
                break;
            case 1:
                total -= acc7 * feeRate;
                break;
            default:
                total = total * 0.5 + acc7;
        }
        try {
            if (total > limit || acc7 < 0) {
                journal.add("check 7 " + total);
            }
            balances.put(account + "-7", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        if (total < 0) {
            overdrafts++;
            total = 0;
        }
        return total;
    }

    public double audit(String account, double[] amounts, double limit, int mode) {
        double total = balances.getOrDefault(account, 0.0);
        journal.add("audit " + account);

        double acc8 = 0;
        for (int i8 = 0; i8 < amounts.length; i8++) {
            double a = amounts[i8];
            if (a > limit) {
                acc8 += limit;
                journal.add("cap 8 " + a);
            } else if (a < 0) {
                acc8 -= a * feeRate;
                overdrafts++;
            } else {
                acc8 += a;
            }
            if (acc8 > limit * 10 && i8 % 2 == 0) {
                acc8 = acc8 / 2;
                continue;
            }
            total += a * 5;
        }
        switch (mode) {
            case 0:
                total += acc8;
                break;
            case 1:
                total -= acc8 * feeRate;
                break;
            default:
                total = total * 0.5 + acc8;
        }
        try {
            if (total > limit || acc8 < 0) {
                journal.add("check 8 " + total);
            }
            balances.put(account + "-8", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        double acc9 = 0;
        for (int i9 = 0; i9 < amounts.length; i9++) {
            double a = amounts[i9];
            if (a > limit) {
                acc9 += limit;
                journal.add("cap 9 " + a);
            } else if (a < 0) {
                acc9 -= a * feeRate;
                overdrafts++;
            } else {
                acc9 += a;
            }
            if (acc9 > limit * 11 && i9 % 2 == 0) {
                acc9 = acc9 / 2;
                continue;
            }
            total += a * 8;
        }
        switch (mode) {
            case 0:
                total += acc9;
                break;
            case 1:
                total -= acc9 * feeRate;
                break;
            default:
                total = total * 0.5 + acc9;
        }
        try {
            if (total > limit || acc9 < 0) {
                journal.add("check 9 " + total);
            }
            balances.put(account + "-9", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        if (total < 0) {
            overdrafts++;
            total = 0;
        }
        return total;
    }

    public double forecast(String account, double[] amounts, double limit, int mode) {
        double total = balances.getOrDefault(account, 0.0);
        journal.add("forecast " + account);

        double acc10 = 0;
        for (int i10 = 0; i10 < amounts.length; i10++) {
            double a = amounts[i10];
            if (a > limit) {
                acc10 += limit;
                journal.add("cap 10 " + a);
            } else if (a < 0) {
                acc10 -= a * feeRate;
                overdrafts++;
            } else {
                acc10 += a;
            }
            if (acc10 > limit * 12 && i10 % 2 == 0) {
                acc10 = acc10 / 2;
                continue;
            }
            total += a * 3;
        }
        switch (mode) {
            case 0:
                total += acc10;
                break;
            case 1:
                total -= acc10 * feeRate;
                break;
            default:
                total = total * 0.6 + acc10;
        }
        try {
            if (total > limit || acc10 < 0) {
                journal.add("check 10 " + total);
            }
            balances.put(account + "-10", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        double acc11 = 0;
        for (int i11 = 0; i11 < amounts.length; i11++) {
            double a = amounts[i11];
            if (a > limit) {
                acc11 += limit;
                journal.add("cap 11 " + a);
            } else if (a < 0) {
                acc11 -= a * feeRate;
                overdrafts++;
            } else {
                acc11 += a;
            }
            if (acc11 > limit * 13 && i11 % 2 == 0) {
                acc11 = acc11 / 2;
                continue;
            }
            total += a * 2;
        }
        switch (mode) {
            case 0:
                total += acc11;
                break;
            case 1:
                total -= acc11 * feeRate;
                break;
            default:
                total = total * 0.9 + acc11;
        }
        try {
            if (total > limit || acc11 < 0) {
                journal.add("check 11 " + total);
            }
            balances.put(account + "-11", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        if (total < 0) {
            overdrafts++;
            total = 0;
        }
        return total;
    }

    public double consolidate(String account, double[] amounts, double limit, int mode) {
        double total = balances.getOrDefault(account, 0.0);
        journal.add("consolidate " + account);

        double acc12 = 0;
        for (int i12 = 0; i12 < amounts.length; i12++) {
            double a = amounts[i12];
            if (a > limit) {
                acc12 += limit;
                journal.add("cap 12 " + a);
            } else if (a < 0) {
                acc12 -= a * feeRate;
                overdrafts++;
            } else {
                acc12 += a;
            }
            if (acc12 > limit * 14 && i12 % 2 == 0) {
                acc12 = acc12 / 2;
                continue;
            }
            total += a * 8;
        }
        switch (mode) {
            case 0:
                total += acc12;
                break;
            case 1:
                total -= acc12 * feeRate;
                break;
            default:
                total = total * 0.5 + acc12;
        }
        try {
            if (total > limit || acc12 < 0) {
                journal.add("check 12 " + total);
            }
            balances.put(account + "-12", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        double acc13 = 0;
        for (int i13 = 0; i13 < amounts.length; i13++) {
            double a = amounts[i13];
            if (a > limit) {
                acc13 += limit;
                journal.add("cap 13 " + a);
            } else if (a < 0) {
                acc13 -= a * feeRate;
                overdrafts++;
            } else {
                acc13 += a;
            }
            if (acc13 > limit * 15 && i13 % 2 == 0) {
                acc13 = acc13 / 2;
                continue;
            }
            total += a * 5;
        }
        switch (mode) {
            case 0:
                total += acc13;
                break;
            case 1:
                total -= acc13 * feeRate;
                break;
            default:
                total = total * 0.5 + acc13;
        }
        try {
            if (total > limit || acc13 < 0) {
                journal.add("check 13 " + total);
            }
            balances.put(account + "-13", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        if (total < 0) {
            overdrafts++;
            total = 0;
        }
        return total;
    }

    public double allocate(String account, double[] amounts, double limit, int mode) {
        double total = balances.getOrDefault(account, 0.0);
        journal.add("allocate " + account);

        double acc14 = 0;
        for (int i14 = 0; i14 < amounts.length; i14++) {
            double a = amounts[i14];
            if (a > limit) {
                acc14 += limit;
                journal.add("cap 14 " + a);
            } else if (a < 0) {
                acc14 -= a * feeRate;
                overdrafts++;
            } else {
                acc14 += a;
            }
            if (acc14 > limit * 16 && i14 % 2 == 0) {
                acc14 = acc14 / 2;
                continue;
            }
            total += a * 4;
        }
        switch (mode) {
            case 0:
                total += acc14;
                break;
            case 1:
                total -= acc14 * feeRate;
                break;
            default:
                total = total * 0.7 + acc14;
        }
        try {
            if (total > limit || acc14 < 0) {
                journal.add("check 14 " + total);
            }
            balances.put(account + "-14", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        double acc15 = 0;
        for (int i15 = 0; i15 < amounts.length; i15++) {
            double a = amounts[i15];
            if (a > limit) {
                acc15 += limit;
                journal.add("cap 15 " + a);
            } else if (a < 0) {
                acc15 -= a * feeRate;
                overdrafts++;
            } else {
                acc15 += a;
            }
            if (acc15 > limit * 17 && i15 % 2 == 0) {
                acc15 = acc15 / 2;
                continue;
            }
            total += a * 8;
        }
        switch (mode) {
            case 0:
                total += acc15;
                break;
            case 1:
                total -= acc15 * feeRate;
                break;
            default:
                total = total * 0.6 + acc15;
        }
        try {
            if (total > limit || acc15 < 0) {
                journal.add("check 15 " + total);
            }
            balances.put(account + "-15", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        if (total < 0) {
            overdrafts++;
            total = 0;
        }
        return total;
    }

    public double amortize(String account, double[] amounts, double limit, int mode) {
        double total = balances.getOrDefault(account, 0.0);
        journal.add("amortize " + account);

        double acc16 = 0;
        for (int i16 = 0; i16 < amounts.length; i16++) {
            double a = amounts[i16];
            if (a > limit) {
                acc16 += limit;
                journal.add("cap 16 " + a);
            } else if (a < 0) {
                acc16 -= a * feeRate;
                overdrafts++;
            } else {
                acc16 += a;
            }
            if (acc16 > limit * 18 && i16 % 2 == 0) {
                acc16 = acc16 / 2;
                continue;
            }
            total += a * 3;
        }
        switch (mode) {
            case 0:
                total += acc16;
                break;
            case 1:
                total -= acc16 * feeRate;
                break;
            default:
                total = total * 0.9 + acc16;
        }
        try {
            if (total > limit || acc16 < 0) {
                journal.add("check 16 " + total);
            }
            balances.put(account + "-16", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        double acc17 = 0;
        for (int i17 = 0; i17 < amounts.length; i17++) {
            double a = amounts[i17];
            if (a > limit) {
                acc17 += limit;
                journal.add("cap 17 " + a);
            } else if (a < 0) {
                acc17 -= a * feeRate;
                overdrafts++;
            } else {
                acc17 += a;
            }
            if (acc17 > limit * 19 && i17 % 2 == 0) {
                acc17 = acc17 / 2;
                continue;
            }
            total += a * 6;
        }
        switch (mode) {
            case 0:
                total += acc17;
                break;
            case 1:
                total -= acc17 * feeRate;
                break;
            default:
                total = total * 0.9 + acc17;
        }
        try {
            if (total > limit || acc17 < 0) {
                journal.add("check 17 " + total);
            }
            balances.put(account + "-17", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        if (total < 0) {
            overdrafts++;
            total = 0;
        }
        return total;
    }

    public double revalue(String account, double[] amounts, double limit, int mode) {
        double total = balances.getOrDefault(account, 0.0);
        journal.add("revalue " + account);

        double acc18 = 0;
        for (int i18 = 0; i18 < amounts.length; i18++) {
            double a = amounts[i18];
            if (a > limit) {
                acc18 += limit;
                journal.add("cap 18 " + a);
            } else if (a < 0) {
                acc18 -= a * feeRate;
                overdrafts++;
            } else {
                acc18 += a;
            }
            if (acc18 > limit * 20 && i18 % 2 == 0) {
                acc18 = acc18 / 2;
                continue;
            }
            total += a * 4;
        }
        switch (mode) {
            case 0:
                total += acc18;
                break;
            case 1:
                total -= acc18 * feeRate;
                break;
            default:
                total = total * 0.5 + acc18;
        }
        try {
            if (total > limit || acc18 < 0) {
                journal.add("check 18 " + total);
            }
            balances.put(account + "-18", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        double acc19 = 0;
        for (int i19 = 0; i19 < amounts.length; i19++) {
            double a = amounts[i19];
            if (a > limit) {
                acc19 += limit;
                journal.add("cap 19 " + a);
            } else if (a < 0) {
                acc19 -= a * feeRate;
                overdrafts++;
            } else {
                acc19 += a;
            }
            if (acc19 > limit * 21 && i19 % 2 == 0) {
                acc19 = acc19 / 2;
                continue;
            }
            total += a * 5;
        }
        switch (mode) {
            case 0:
                total += acc19;
                break;
            case 1:
                total -= acc19 * feeRate;
                break;
            default:
                total = total * 0.7 + acc19;
        }
        try {
            if (total > limit || acc19 < 0) {
                journal.add("check 19 " + total);
            }
            balances.put(account + "-19", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        if (total < 0) {
            overdrafts++;
            total = 0;
        }
        return total;
    }

    public double close(String account, double[] amounts, double limit, int mode) {
        double total = balances.getOrDefault(account, 0.0);
        journal.add("close " + account);

        double acc20 = 0;
        for (int i20 = 0; i20 < amounts.length; i20++) {
            double a = amounts[i20];
            if (a > limit) {
                acc20 += limit;
                journal.add("cap 20 " + a);
            } else if (a < 0) {
                acc20 -= a * feeRate;
                overdrafts++;
            } else {
                acc20 += a;
            }
            if (acc20 > limit * 22 && i20 % 2 == 0) {
                acc20 = acc20 / 2;
                continue;
            }
            total += a * 3;
        }
        switch (mode) {
            case 0:
                total += acc20;
                break;
            case 1:
                total -= acc20 * feeRate;
                break;
            default:
                total = total * 0.9 + acc20;
        }
        try {
            if (total > limit || acc20 < 0) {
                journal.add("check 20 " + total);
            }
            balances.put(account + "-20", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        double acc21 = 0;
        for (int i21 = 0; i21 < amounts.length; i21++) {
            double a = amounts[i21];
            if (a > limit) {
                acc21 += limit;
                journal.add("cap 21 " + a);
            } else if (a < 0) {
                acc21 -= a * feeRate;
                overdrafts++;
            } else {
                acc21 += a;
            }
            if (acc21 > limit * 23 && i21 % 2 == 0) {
                acc21 = acc21 / 2;
                continue;
            }
            total += a * 3;
        }
        switch (mode) {
            case 0:
                total += acc21;
                break;
            case 1:
                total -= acc21 * feeRate;
                break;
            default:
                total = total * 0.9 + acc21;
        }
        try {
            if (total > limit || acc21 < 0) {
                journal.add("check 21 " + total);
            }
            balances.put(account + "-21", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        if (total < 0) {
            overdrafts++;
            total = 0;
        }
        return total;
    }

    public double rollover(String account, double[] amounts, double limit, int mode) {
        double total = balances.getOrDefault(account, 0.0);
        journal.add("rollover " + account);

        double acc22 = 0;
        for (int i22 = 0; i22 < amounts.length; i22++) {
            double a = amounts[i22];
            if (a > limit) {
                acc22 += limit;
                journal.add("cap 22 " + a);
            } else if (a < 0) {
                acc22 -= a * feeRate;
                overdrafts++;
            } else {
                acc22 += a;
            }
            if (acc22 > limit * 24 && i22 % 2 == 0) {
                acc22 = acc22 / 2;
                continue;
            }
            total += a * 2;
        }
        switch (mode) {
            case 0:
                total += acc22;
                break;
            case 1:
                total -= acc22 * feeRate;
                break;
            default:
                total = total * 0.9 + acc22;
        }
        try {
            if (total > limit || acc22 < 0) {
                journal.add("check 22 " + total);
            }
            balances.put(account + "-22", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        double acc23 = 0;
        for (int i23 = 0; i23 < amounts.length; i23++) {
            double a = amounts[i23];
            if (a > limit) {
                acc23 += limit;
                journal.add("cap 23 " + a);
            } else if (a < 0) {
                acc23 -= a * feeRate;
                overdrafts++;
            } else {
                acc23 += a;
            }
            if (acc23 > limit * 25 && i23 % 2 == 0) {
                acc23 = acc23 / 2;
                continue;
            }
            total += a * 5;
        }
        switch (mode) {
            case 0:
                total += acc23;
                break;
            case 1:
                total -= acc23 * feeRate;
                break;
            default:
                total = total * 0.8 + acc23;
        }
        try {
            if (total > limit || acc23 < 0) {
                journal.add("check 23 " + total);
            }
            balances.put(account + "-23", total);
        } catch (RuntimeException e) {
            journal.add(e.getMessage());
            total = 0;
        }

        if (total < 0) {
            overdrafts++;
            total = 0;
        }
        return total;
    }
}

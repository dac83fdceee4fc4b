/**
 * Sums the elements of an array.
 */
public class ArraySum {
    /**
     * Returns the sum of all values.
     *
     * @param values the numbers to add
     * @return the total
     */
    public static int sum(int[] values) {
        int total = 0;
        for (int v : values) {
            total += v;
        }
        return total;
    }

    public static void main(String[] args) {
        int[] data = {3, 1, 4, 1, 5};
        System.out.println(sum(data));
    }
}

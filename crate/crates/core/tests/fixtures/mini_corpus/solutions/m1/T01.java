public class ArraySum {
    public static int sum(int[] values) {
        int total = 0;
        for (int i = 0; i < values.length; i++) {
            total = total + values[i];
        }
        return total;
    }

    public static void main(String[] args) {
        int[] data = {3, 1, 4, 1, 5};
        int result = sum(data);
        System.out.println("Sum: " + result);
    }
}
